#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tgd/extension.hpp"
#include "tgd/nulls.hpp"
#include "tgd/syntax.hpp"
#include "tgd/unify.hpp"

namespace tgd {

// A recursion-transmitting configuration: inside one pair, atom a (holding
// pivot x) can feed atom b (holding pivot z) through the head c, with both
// pivots able to carry cyclically generated values. The witness records the
// route by which the head reproduces a (directly, or through a second pair),
// the connecting path inside the body, and the markup evidence for the link
// variable that certifies transmission.
struct rtc_witness {
    std::size_t pair_id = 0;
    atom a;
    atom b;
    atom c;
    std::string x;
    std::string z;
    atom a_prime;
    substitution theta;  // variables of a -> variables of a_prime, a theta = a_prime

    // Route: either the head itself equals a_prime, or a second pair's body
    // covers c while its head instantiates to a_prime.
    bool via_second_pair = false;
    std::size_t second_pair_id = 0;
    atom b_prime;              // matched body atom of the second pair
    std::string eta_rendered;  // instantiating substitution of the second pair

    std::vector<atom> link_path;                    // d1 = a, ..., dm = b
    std::vector<std::set<std::string>> path_links;  // shared affected vars per step
    std::size_t failing_link_index = 0;             // step index certifying the witness
    std::string failing_link_var;                   // chosen variable at that step
    std::set<std::string> m_var_set;                // marked variables of a

    std::optional<atom> guard;  // body atom containing both pivots, when any
};

struct rtc_options {
    std::size_t max_witnesses = 0;  // 0 = unlimited
    bool unguarded_only = false;
    bool stop_at_first = false;
    std::size_t path_budget = 100000;  // simple paths examined per atom pair
};

struct rtc_result {
    std::vector<rtc_witness> witnesses;
    bool paths_capped = false;
    bool truncated = false;  // max_witnesses reached
};

// Enumerates witnesses over the constructed pairs in a pinned order: pairs by
// (body size, canonical key), pivots lexicographically, atom pairs in body
// order, direct route before second-pair route, second pairs by the same pair
// order. Each candidate yields at most one witness, built from the first
// link path and link variable that satisfy the conditions.
rtc_result find_rtcs(const extension_set& xs, const null_analysis& na,
                     const rtc_options& opt = {});

enum class tg_status { member, non_member, inconclusive };

struct tg_verdict {
    tg_status status = tg_status::inconclusive;
    std::optional<rtc_witness> witness;  // unguarded witness for non_member
    std::string reason;                  // set when inconclusive
    std::size_t pairs_examined = 0;
    bool saturated = false;
    bool capped = false;
};

// Verdict from already-computed pairs and null analysis. A found unguarded
// witness is decisive regardless of caps; membership additionally needs the
// pair construction to have saturated.
tg_verdict classify_tg(const extension_set& xs, const null_analysis& na,
                       const rtc_options& opt = {});

// Convenience: saturate, analyze nulls, classify.
tg_verdict is_triangularly_guarded(const program& p, const extension_limits& lim = {});

}  // namespace tgd
