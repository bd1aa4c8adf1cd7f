#include "doctest.h"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "support/corpus.hpp"
#include "tgd/report.hpp"

using namespace tgd;

namespace {

// Straight transcription of the published FNV-1a 64-bit algorithm, kept apart
// from the library's loop.
std::string fnv_reference(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<std::string> keys_of(const ordered_json& j) {
    std::vector<std::string> out;
    for (const auto& [k, v] : j.items()) out.push_back(k);
    return out;
}

}  // namespace

TEST_CASE("input digests match the published test vectors and a reference loop") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");

    std::mt19937_64 eng(99);
    for (int round = 0; round < 200; ++round) {
        std::string s;
        std::size_t len = eng() % 64;
        for (std::size_t i = 0; i < len; ++i) s.push_back(char(eng() % 256));
        CHECK(fnv1a64_hex(s) == fnv_reference(s));
    }
}

TEST_CASE("the report preamble names the tool and digests each input") {
    ordered_json h = report_header("classify", {{"rules", corpus::sigma1_text},
                                               {"facts", corpus::d2_text}});
    CHECK(keys_of(h) == std::vector<std::string>{"tool", "version", "command", "input_digests"});
    CHECK(h["tool"] == "tgdtool");
    CHECK(h["version"] == "0.1.0");
    CHECK(h["command"] == "classify");
    CHECK(h["input_digests"]["rules"] == fnv1a64_hex(corpus::sigma1_text));
    CHECK(h["input_digests"]["facts"] == fnv1a64_hex(corpus::d2_text));
    CHECK(keys_of(h["input_digests"]) == std::vector<std::string>{"rules", "facts"});
}

TEST_CASE("status names") {
    CHECK(status_name(tg_status::member) == "member");
    CHECK(status_name(tg_status::non_member) == "non-member");
    CHECK(status_name(tg_status::inconclusive) == "inconclusive");
    CHECK(status_name(ask_status::entailed) == "entailed");
    CHECK(status_name(ask_status::not_entailed) == "not-entailed");
    CHECK(status_name(ask_status::unknown) == "unknown");
}

TEST_CASE("class verdict payload shape") {
    ordered_json j = to_json(is_guarded(corpus::sigma1()));
    CHECK(keys_of(j) == std::vector<std::string>{"class", "member", "evidence"});
    CHECK(j["class"] == "guarded");
    CHECK(j["member"] == false);
}

TEST_CASE("membership verdict payload shape, with and without a witness") {
    tg_verdict member = is_triangularly_guarded(corpus::sigma1());
    ordered_json jm = to_json(member);
    CHECK(keys_of(jm) == std::vector<std::string>{"class", "status", "member",
                                                  "pairs_examined", "saturated", "capped",
                                                  "witness"});
    CHECK(jm["class"] == "tg");
    CHECK(jm["status"] == "member");
    CHECK(jm["member"] == true);
    CHECK(jm["witness"].is_null());

    tg_verdict failed = is_triangularly_guarded(corpus::sigma2());
    ordered_json jf = to_json(failed);
    CHECK(jf["status"] == "non-member");
    REQUIRE(jf["witness"].is_object());
    CHECK(keys_of(jf["witness"]) ==
          std::vector<std::string>{"pair", "a", "b", "c", "x", "z", "a_prime", "theta",
                                   "via", "link_path", "path_links", "failing_link_index",
                                   "failing_link_var", "m_var", "guard"});
    CHECK(jf["witness"]["via"] == "head");
    CHECK(jf["witness"]["guard"].is_null());

    tg_verdict capped = is_triangularly_guarded(corpus::sigma3(), extension_limits{5, 8});
    ordered_json jc = to_json(capped);
    CHECK(jc["status"] == "inconclusive");
    CHECK(jc.contains("reason"));
    CHECK(keys_of(jc)[3] == "reason");  // slotted between member and pairs_examined
}

TEST_CASE("pair construction payload shape") {
    extension_set xs = saturate(corpus::sigma1());
    pair_bounds pb = compute_pair_bounds(corpus::sigma1());
    ordered_json j = extension_json(xs, pb);
    CHECK(keys_of(j) == std::vector<std::string>{"pair_count", "max_depth", "saturated",
                                                 "capped", "bounds", "pairs"});
    CHECK(j["pair_count"] == 10);
    CHECK(keys_of(j["bounds"]) ==
          std::vector<std::string>{"base_pairs", "predicates", "max_body", "max_arity",
                                   "constants", "d", "pair_bound", "pair_bound_digits",
                                   "pair_bound_exact"});
    CHECK(j["bounds"]["d"] == "16");
    CHECK(j["bounds"]["pair_bound"] == "65536");

    REQUIRE(j["pairs"].size() == 10);
    CHECK(keys_of(j["pairs"][0]) ==
          std::vector<std::string>{"id", "body", "head", "key", "depth", "origin"});
    CHECK(keys_of(j["pairs"][0]["origin"]) == std::vector<std::string>{"rule", "head_index"});
    bool saw_derived = false;
    for (const auto& pj : j["pairs"]) {
        if (!pj.contains("provenance")) continue;
        saw_derived = true;
        CHECK(keys_of(pj) ==
              std::vector<std::string>{"id", "body", "head", "key", "depth", "provenance"});
        CHECK(keys_of(pj["provenance"][0]) ==
              std::vector<std::string>{"base", "target", "unified_atom", "mgu"});
    }
    CHECK(saw_derived);
}

TEST_CASE("instance and query payload shapes") {
    labeled_instance inst = chase_to_level(corpus::sigma2(), corpus::d2(), 2);
    ordered_json j = instance_json(inst);
    CHECK(keys_of(j) == std::vector<std::string>{"chase_variant", "depth", "truncated",
                                                 "exhausted", "atoms", "null_levels",
                                                 "firings"});
    CHECK(j["chase_variant"] == "oblivious-dedup");
    REQUIRE(j["atoms"].size() == 7);
    CHECK(j["atoms"][0]["atom"] == "t(c1,c2)");
    CHECK(j["atoms"][0]["level"] == 0);
    CHECK(j["null_levels"]["_n1"] == 1);
    CHECK(j["null_levels"]["_n2"] == 2);
    REQUIRE(j["firings"].size() == 3);
    CHECK(keys_of(j["firings"][0]) == std::vector<std::string>{"rule_index", "rule",
                                                               "trigger", "added", "noop",
                                                               "wave"});

    bcq_result open_q = bcq_holds(corpus::sigma2(), corpus::d2(), corpus::q2(), 4);
    ordered_json jq = to_json(open_q);
    CHECK(keys_of(jq) == std::vector<std::string>{"status", "depth", "witness"});
    CHECK(jq["status"] == "unknown");
    CHECK(jq["witness"].is_null());

    bcq_result hit = bcq_holds(corpus::sigma2(), corpus::d2(),
                               parse_query("?- t(c2,X)."), 2);
    ordered_json jh = to_json(hit);
    CHECK(jh["status"] == "entailed");
    CHECK(jh["witness"] == "{X->_n1}");
}

TEST_CASE("null analysis payload shape") {
    null_analysis na = analyze_nulls(corpus::sigma1());
    ordered_json j = nullsets_json(na);
    CHECK(keys_of(j) == std::vector<std::string>{"head_entries", "position_union", "nodes",
                                                 "edges", "on_cycle", "cyclic_closure"});
    REQUIRE(!j["head_entries"].empty());
    CHECK(keys_of(j["head_entries"][0]) ==
          std::vector<std::string>{"rule_index", "atom_index", "arg_index", "tokens"});
    CHECK(keys_of(j["position_union"][0]) ==
          std::vector<std::string>{"predicate", "arg_index", "tokens"});
    CHECK(j["on_cycle"] == ordered_json::array({"n_s11_Z"}));
    CHECK(j["edges"] == ordered_json::array({ordered_json::array({"n_s11_Z", "n_s11_Z"})}));
}

TEST_CASE("probe payload shape") {
    extension_set xs = saturate(corpus::sigma1());
    probe_report rep = bounded_nulls_probe(corpus::sigma1(), xs, corpus::d2(),
                                           corpus::shape_join().body, 2, 4, 2);
    ordered_json j = probe_json(rep);
    CHECK(keys_of(j) == std::vector<std::string>{"bounds", "n_small", "n_big",
                                                 "extra_levels", "truncated", "recent_nulls",
                                                 "old_nulls", "pairs", "violations"});
    CHECK(keys_of(j["bounds"]) ==
          std::vector<std::string>{"d", "m", "n", "n_digits", "n_exact", "n_prime",
                                   "n_prime_digits", "n_prime_exact"});
    CHECK(j["bounds"]["m"] == "480");
    CHECK(j["recent_nulls"] == ordered_json::array({"_n5", "_n6"}));
    CHECK(j["violations"] == 0);
    REQUIRE(j["pairs"].size() == 4);
    CHECK(keys_of(j["pairs"][0]) ==
          std::vector<std::string>{"recent", "old", "interchangeable"});

    // A violating pair carries its counterexample inline.
    extension_set xs2 = saturate(corpus::sigma2());
    probe_report rep2 = bounded_nulls_probe(corpus::sigma2(), xs2, corpus::d2(),
                                            corpus::shape_edge().body, 2, 4, 2);
    ordered_json j2 = probe_json(rep2);
    CHECK(keys_of(j2["pairs"][0]) ==
          std::vector<std::string>{"recent", "old", "interchangeable", "counterexample"});
    CHECK(j2["violations"] == 15);
}

TEST_CASE("payloads serialize to identical bytes on repeated runs") {
    auto render_all = []() {
        extension_set xs = saturate(corpus::sigma3());
        pair_bounds pb = compute_pair_bounds(corpus::sigma3());
        null_analysis na = analyze_nulls(corpus::sigma3());
        labeled_instance inst = chase_to_level(corpus::sigma2(), corpus::d2(), 3);
        std::string out = extension_json(xs, pb).dump(2);
        out += to_json(is_triangularly_guarded(corpus::sigma3())).dump(2);
        out += nullsets_json(na).dump(2);
        out += instance_json(inst).dump(2);
        out += report_header("x", {{"rules", corpus::sigma3_text}}).dump(2);
        return out;
    };
    CHECK(render_all() == render_all());
}
