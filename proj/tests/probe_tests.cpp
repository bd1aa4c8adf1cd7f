#include "doctest.h"

#include <map>
#include <set>
#include <string>
#include <vector>

#include "support/corpus.hpp"
#include "tgd/chase.hpp"
#include "tgd/parser.hpp"
#include "tgd/probe.hpp"

using namespace tgd;

namespace {

// From-scratch transcription of the interchangeability test: enumerate every
// tuple of instance atoms matching the shape (consecutive atoms sharing a
// term, variables bound injectively), keep those whose image carries both
// nulls, and demand for each a null-identifying remap whose image stays in
// the instance. Written without the library's search machinery.
struct oracle {
    const labeled_instance& inst;
    const std::vector<atom>& shape;

    std::vector<std::uint64_t> inst_nulls() const {
        std::vector<std::uint64_t> out;
        for (const auto& [idx, lv] : inst.null_levels) out.push_back(idx);
        return out;
    }

    static std::set<std::uint64_t> nulls_in(const std::vector<atom>& atoms) {
        std::set<std::uint64_t> out;
        for (const auto& a : atoms)
            for (const auto& t : a.args)
                if (t.is_null()) out.insert(t.null_index);
        return out;
    }

    static bool share_term(const atom& a, const atom& b) {
        for (const auto& ta : a.args)
            for (const auto& tb : b.args)
                if (ta == tb) return true;
        return false;
    }

    // Consistent injective variable binding across the whole tuple.
    bool binds(const std::vector<std::size_t>& pick) const {
        std::map<std::string, term> bound;
        std::set<std::string> images;
        for (std::size_t s = 0; s < shape.size(); ++s) {
            const atom& pat = shape[s];
            const atom& got = inst.atoms[pick[s]];
            if (pat.predicate != got.predicate || pat.args.size() != got.args.size())
                return false;
            for (std::size_t i = 0; i < pat.args.size(); ++i) {
                const term& pt = pat.args[i];
                const term& gt = got.args[i];
                if (!pt.is_var()) {
                    if (!(pt == gt)) return false;
                    continue;
                }
                auto it = bound.find(pt.name);
                if (it != bound.end()) {
                    if (!(it->second == gt)) return false;
                    continue;
                }
                if (!images.insert(to_string(gt)).second) return false;
                bound.emplace(pt.name, gt);
            }
        }
        return true;
    }

    bool mergeable(const std::vector<atom>& image, std::uint64_t na, std::uint64_t nb) const {
        std::vector<std::uint64_t> pool = inst_nulls();
        std::set<std::uint64_t> in_image = nulls_in(image);
        std::vector<std::uint64_t> rest;
        for (auto n : in_image)
            if (n != na && n != nb) rest.push_back(n);

        // Odometer over (target, rest assignments).
        for (auto target : pool) {
            std::vector<std::size_t> idx(rest.size(), 0);
            while (true) {
                std::map<std::uint64_t, std::uint64_t> m{{na, target}, {nb, target}};
                for (std::size_t i = 0; i < rest.size(); ++i) m[rest[i]] = pool[idx[i]];
                bool inside = true;
                for (const atom& a : image) {
                    atom img = a;
                    for (auto& t : img.args)
                        if (t.is_null()) t = term::null(m.at(t.null_index));
                    if (!inst.contains(img)) {
                        inside = false;
                        break;
                    }
                }
                if (inside) return true;
                std::size_t k = 0;
                while (k < idx.size() && ++idx[k] == pool.size()) idx[k++] = 0;
                if (k == idx.size()) break;
            }
        }
        return false;
    }

    bool interchangeable(std::uint64_t na, std::uint64_t nb) const {
        std::vector<std::size_t> pick(shape.size(), 0);
        std::size_t n = inst.atoms.size();
        if (shape.empty() || n == 0) return true;
        while (true) {
            bool connected = true;
            for (std::size_t s = 1; s < shape.size(); ++s)
                if (!share_term(inst.atoms[pick[s - 1]], inst.atoms[pick[s]]))
                    connected = false;
            if (connected && binds(pick)) {
                std::vector<atom> image;
                for (std::size_t s : pick) image.push_back(inst.atoms[s]);
                std::set<std::uint64_t> in_image = nulls_in(image);
                if (in_image.count(na) && in_image.count(nb) && !mergeable(image, na, nb))
                    return false;
            }
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == n) pick[k++] = 0;
            if (k == pick.size()) break;
        }
        return true;
    }
};

void agree_on_all_pairs(const program& p, const database& d, std::size_t depth,
                        const query& shape) {
    labeled_instance inst = chase_to_level(p, d, depth);
    REQUIRE(!inst.truncated);
    oracle oc{inst, shape.body};
    std::vector<std::uint64_t> nulls = oc.inst_nulls();
    REQUIRE(nulls.size() >= 2);
    for (std::size_t i = 0; i < nulls.size(); ++i)
        for (std::size_t j = i + 1; j < nulls.size(); ++j) {
            bool lib = nulls_interchangeable(inst, shape.body, nulls[i], nulls[j]);
            bool ref = oc.interchangeable(nulls[i], nulls[j]);
            CHECK(lib == ref);
        }
}

}  // namespace

TEST_CASE("interchangeability agrees with the exhaustive transcription") {
    agree_on_all_pairs(corpus::sigma1(), corpus::d2(), 4, corpus::shape_join());
    agree_on_all_pairs(corpus::sigma2(), corpus::d2(), 4, corpus::shape_edge());
    agree_on_all_pairs(corpus::sigma2(), corpus::d2(), 4, corpus::shape_join());
}

TEST_CASE("the well-behaved ruleset shows no violations at the probe scale") {
    extension_set xs = saturate(corpus::sigma1());
    probe_report rep = bounded_nulls_probe(corpus::sigma1(), xs, corpus::d2(),
                                           corpus::shape_join().body, 2, 4, 2);
    CHECK(rep.n_small == 2);
    CHECK(rep.n_big == 4);
    CHECK(rep.extra_levels == 2);
    CHECK(!rep.truncated);
    CHECK(rep.recent_nulls == std::vector<std::uint64_t>{5, 6});
    CHECK(rep.old_nulls == std::vector<std::uint64_t>{1, 2});
    REQUIRE(rep.pairs.size() == 4);
    CHECK(rep.violations == 0);
    for (const auto& pr : rep.pairs) {
        CHECK(pr.interchangeable);
        CHECK(pr.counterexample.empty());
    }

    CHECK(rep.bounds.d == 16);
    CHECK(rep.bounds.m == 480);  // 16 * 5 * 2 * 3
    CHECK(rep.bounds.big_n.exact);
    CHECK(rep.bounds.big_n.value == big_int("25480396800000"));  // 480^5
    CHECK(!rep.bounds.nprime_exact);
    CHECK(rep.bounds.nprime_digits == "341595453224265");
    CHECK(rep.bounds.nprime_rendered == "25480396800000^25480396800000");
}

TEST_CASE("the unbounded twin fails the edge-shape probe with counterexamples") {
    extension_set xs = saturate(corpus::sigma2());
    probe_report rep = bounded_nulls_probe(corpus::sigma2(), xs, corpus::d2(),
                                           corpus::shape_edge().body, 2, 4, 2);
    CHECK(!rep.truncated);
    REQUIRE(rep.recent_nulls.size() == 31);
    CHECK(rep.recent_nulls.front() == 9);
    CHECK(rep.recent_nulls.back() == 39);
    CHECK(rep.old_nulls == std::vector<std::uint64_t>{1, 2});
    REQUIRE(rep.pairs.size() == 62);
    CHECK(rep.violations == 15);

    // Pairs come out recent-major ascending; the first one is a violation
    // whose embedding is pinned.
    CHECK(rep.pairs[0].null_recent == 9);
    CHECK(rep.pairs[0].null_old == 1);
    CHECK(!rep.pairs[0].interchangeable);
    CHECK(rep.pairs[0].counterexample ==
          "embedding {X->_n1, Y->_n9} image {t(_n1,_n9)}");

    bool found_13_2 = false;
    for (const auto& pr : rep.pairs)
        if (pr.null_recent == 13 && pr.null_old == 2) {
            found_13_2 = true;
            CHECK(pr.interchangeable);
        }
    CHECK(found_13_2);

    CHECK(rep.bounds.m == 320);  // 16 * 5 * 2 * 2
    CHECK(rep.bounds.big_n.value == big_int("10485760000"));  // 320^4
    CHECK(!rep.bounds.nprime_exact);
    CHECK(rep.bounds.nprime_rendered == "10485760000^10485760000");

    // Re-running the same chase outside the probe reproduces the verdict and
    // the counterexample byte for byte.
    labeled_instance inst = chase_to_level(corpus::sigma2(), corpus::d2(), 6);
    std::string ce;
    CHECK(!nulls_interchangeable(inst, corpus::shape_edge().body, 9, 1, &ce));
    CHECK(ce == rep.pairs[0].counterexample);

    // Spot-check the probe verdicts against the transcription oracle.
    oracle oc{inst, corpus::shape_edge().body};
    for (const auto& pr : {rep.pairs[0], rep.pairs[1], rep.pairs[8], rep.pairs[9]})
        CHECK(oc.interchangeable(pr.null_recent, pr.null_old) == pr.interchangeable);
}

TEST_CASE("a strangled chase marks the probe truncated") {
    extension_set xs = saturate(corpus::sigma2());
    probe_report rep = bounded_nulls_probe(corpus::sigma2(), xs, corpus::d2(),
                                           corpus::shape_edge().body, 2, 4, 2,
                                           chase_limits{3});
    CHECK(rep.truncated);
    CHECK(rep.pairs.empty());
    CHECK(rep.violations == 0);
}
