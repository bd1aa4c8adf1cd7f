#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "tgd/canonical.hpp"
#include "tgd/unify.hpp"

using namespace tgd;

namespace {

struct raw_pair {
    std::vector<atom> body;
    atom head;
};

raw_pair random_pair(std::mt19937_64& eng) {
    static const std::vector<std::string> var_pool = {"X", "Y", "Z", "W", "V"};
    static const std::vector<std::string> preds = {"t", "u", "s"};
    auto mk_atom = [&](std::size_t arity) {
        atom a;
        a.predicate = preds[eng() % preds.size()];
        for (std::size_t i = 0; i < arity; ++i) {
            if (eng() % 5 == 0)
                a.args.push_back(term::cons("k"));
            else
                a.args.push_back(term::var(var_pool[eng() % var_pool.size()]));
        }
        return a;
    };
    raw_pair p;
    std::size_t nb = 1 + eng() % 4;
    for (std::size_t i = 0; i < nb; ++i) p.body.push_back(mk_atom(1 + eng() % 3));
    p.head = mk_atom(1 + eng() % 3);
    return p;
}

raw_pair rename_and_shuffle(const raw_pair& p, std::mt19937_64& eng) {
    std::set<std::string> vars = variables_of(p.body);
    for (const auto& v : variables_of(p.head)) vars.insert(v);
    std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<std::string> images;
    for (std::size_t i = 0; i < names.size(); ++i)
        images.push_back("R" + std::to_string(i + 1));
    std::shuffle(images.begin(), images.end(), eng);
    substitution s;
    for (std::size_t i = 0; i < names.size(); ++i)
        s.mapping[names[i]] = term::var(images[i]);
    raw_pair out;
    out.body = apply(p.body, s);
    out.head = apply(p.head, s);
    std::shuffle(out.body.begin(), out.body.end(), eng);
    return out;
}

}  // namespace

TEST_CASE("canonical keys are invariant under renaming and body reordering") {
    std::mt19937_64 eng(40590);
    for (int round = 0; round < 300; ++round) {
        raw_pair p = random_pair(eng);
        canonical_pair c1 = canonicalize(p.body, p.head);
        for (int variant = 0; variant < 3; ++variant) {
            raw_pair q = rename_and_shuffle(p, eng);
            canonical_pair c2 = canonicalize(q.body, q.head);
            REQUIRE(c1.key == c2.key);
            REQUIRE(c1.body == c2.body);
            REQUIRE(c1.head == c2.head);
        }
    }
}

TEST_CASE("equal keys certify a variable bijection between the originals") {
    std::mt19937_64 eng(1251);
    for (int round = 0; round < 200; ++round) {
        raw_pair p = random_pair(eng);
        raw_pair q = rename_and_shuffle(p, eng);
        canonical_pair cp = canonicalize(p.body, p.head);
        canonical_pair cq = canonicalize(q.body, q.head);
        REQUIRE(cp.key == cq.key);

        // Compose p's renaming with the inverse of q's: the result must be a
        // bijection carrying p onto q.
        std::map<std::string, std::string> inv_q;
        for (const auto& [orig, canon] : cq.renaming) {
            REQUIRE(inv_q.emplace(canon, orig).second);  // injective
        }
        substitution carry;
        for (const auto& [orig, canon] : cp.renaming)
            carry.mapping[orig] = term::var(inv_q.at(canon));
        std::multiset<atom> p_image, q_atoms;
        for (const auto& a : p.body) p_image.insert(apply(a, carry));
        for (const auto& a : q.body) q_atoms.insert(a);
        REQUIRE(p_image == q_atoms);
        REQUIRE(apply(p.head, carry) == q.head);
    }
}

TEST_CASE("canonical renaming reproduces the canonical atoms") {
    std::mt19937_64 eng(77);
    for (int round = 0; round < 100; ++round) {
        raw_pair p = random_pair(eng);
        canonical_pair c = canonicalize(p.body, p.head);
        substitution s;
        for (const auto& [orig, canon] : c.renaming) s.mapping[orig] = term::var(canon);
        std::multiset<atom> image, canon_atoms;
        for (const auto& a : p.body) image.insert(apply(a, s));
        for (const auto& a : c.body) canon_atoms.insert(a);
        CHECK(image == canon_atoms);
        CHECK(apply(p.head, s) == c.head);
    }
}

TEST_CASE("structurally different pairs get different keys") {
    atom h{"s", {term::var("X")}};
    std::vector<atom> chain = {{"t", {term::var("X"), term::var("Y")}},
                               {"t", {term::var("Y"), term::var("Z")}}};
    std::vector<atom> fork = {{"t", {term::var("X"), term::var("Y")}},
                              {"t", {term::var("X"), term::var("Z")}}};
    CHECK(canonicalize(chain, h).key != canonicalize(fork, h).key);

    // Repeated-argument atoms differ from their spread-out counterparts.
    std::vector<atom> rep = {{"u", {term::var("X"), term::var("Y"), term::var("Y"),
                                    term::var("Z")}}};
    std::vector<atom> flat = {{"u", {term::var("X"), term::var("Y"), term::var("W"),
                                     term::var("Z")}}};
    atom h2{"v", {term::var("X"), term::var("Z")}};
    CHECK(canonicalize(rep, h2).key != canonicalize(flat, h2).key);

    // Constants are not variables.
    std::vector<atom> with_const = {{"t", {term::cons("k"), term::var("Y")}}};
    std::vector<atom> with_var = {{"t", {term::var("X"), term::var("Y")}}};
    atom h3{"s", {term::var("Y")}};
    CHECK(canonicalize(with_const, h3).key != canonicalize(with_var, h3).key);
}

TEST_CASE("key format is the rendered body, a separator, and the head") {
    std::vector<atom> body = {{"t", {term::var("A"), term::var("B")}}};
    atom head{"t", {term::var("B"), term::var("C")}};
    canonical_pair c = canonicalize(body, head);
    CHECK(c.key == "t(V1,V2) | t(V2,V3)");
    CHECK(to_string(c.body) == "t(V1,V2)");
    CHECK(to_string(c.head) == "t(V2,V3)");

    std::vector<atom> cbody = {{"t", {term::cons("c1"), term::var("B")}}};
    CHECK(canonicalize(cbody, head).key == "t('c1',V1) | t(V1,V2)");
}

TEST_CASE("duplicate body atoms collapse") {
    std::vector<atom> body = {{"t", {term::var("A"), term::var("B")}},
                              {"t", {term::var("A"), term::var("B")}}};
    atom head{"s", {term::var("A")}};
    canonical_pair c = canonicalize(body, head);
    CHECK(c.body.size() == 1);
}

TEST_CASE("interchangeable sibling atoms canonicalize symmetrically") {
    // A and B are indistinguishable by structure; swapping them must not
    // change the key. This exercises the permutation search, since color
    // refinement alone cannot split the two t atoms.
    std::vector<atom> b1 = {{"t", {term::var("X"), term::var("A")}},
                            {"t", {term::var("X"), term::var("B")}}};
    std::vector<atom> b2 = {{"t", {term::var("X"), term::var("B")}},
                            {"t", {term::var("X"), term::var("A")}}};
    atom head{"s", {term::var("X")}};
    CHECK(canonicalize(b1, head).key == canonicalize(b2, head).key);
    CHECK(canonicalize(b1, head).key == "t(V1,V2) t(V1,V3) | s(V1)");
}

TEST_CASE("long chains canonicalize without blowup") {
    // A 14-atom variable chain: color refinement needs many rounds here, and
    // per-round color compression keeps the work linear in practice.
    std::vector<atom> body;
    for (int i = 0; i < 14; ++i)
        body.push_back({"t", {term::var("C" + std::to_string(i)),
                              term::var("C" + std::to_string(i + 1))}});
    atom head{"t", {term::var("C0"), term::var("C14")}};
    canonical_pair c = canonicalize(body, head);
    CHECK(c.body.size() == 14);
    std::mt19937_64 eng(5);
    raw_pair q = rename_and_shuffle({body, head}, eng);
    CHECK(canonicalize(q.body, q.head).key == c.key);
}

TEST_CASE("a zero permutation budget still yields a deterministic key") {
    std::vector<atom> body = {{"t", {term::var("X"), term::var("A")}},
                              {"t", {term::var("X"), term::var("B")}}};
    atom head{"s", {term::var("X")}};
    canonical_pair c1 = canonicalize(body, head, 0);
    canonical_pair c2 = canonicalize(body, head, 0);
    CHECK(c1.key == c2.key);
    CHECK(!c1.key.empty());
}
