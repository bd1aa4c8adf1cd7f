#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tgd/canonical.hpp"
#include "tgd/syntax.hpp"
#include "tgd/unify.hpp"

namespace tgd {

using big_int = boost::multiprecision::cpp_int;

// One unfold application: pair `base_id`'s head was unified with one body atom
// of pair `target_id`. `unified_atom` is that atom after unification and
// `mgu_rendered` the substitution pair used, both over pre-canonical names.
struct extension_step {
    std::size_t base_id = 0;
    std::size_t target_id = 0;
    std::string unified_atom;
    std::string mgu_rendered;
};

// A body/head pair in canonical form. Base pairs carry the originating rule
// label and head-atom index; derived pairs carry the step that created them.
struct extension_pair {
    std::size_t id = 0;
    std::vector<atom> body;  // canonical order
    atom head;
    std::string key;  // canonical rendering, used for dedup
    std::size_t depth = 0;
    std::string origin_rule;                 // base pairs only
    std::size_t origin_head_index = 0;       // base pairs only
    std::vector<extension_step> provenance;  // empty for base pairs
};

struct extension_limits {
    std::size_t max_pairs = 100000;
    // A derived body larger than body_limit_mult * max base body size marks
    // the run as capped instead of being kept.
    std::size_t body_limit_mult = 8;
};

struct extension_set {
    std::vector<extension_pair> pairs;
    std::size_t max_depth = 0;
    bool saturated = false;  // worklist exhausted without hitting any cap
    bool capped = false;
};

// Result of one unfold before canonicalization filtering. `residual` holds the
// target-body atoms left over after removing the unified atom; the pair is a
// self-contained rule only when the residual is empty.
struct unfold_result {
    std::vector<atom> body;  // canonical order
    atom head;
    std::string key;
    std::vector<atom> residual;
    std::string unified_atom;
    std::string mgu_rendered;
};

// Base pairs: one per rule and head atom, in rule order then head-atom order,
// each canonicalized. Ids are assigned in creation order.
std::vector<extension_pair> sigma0(const program& p);

// Unfolds `base` into `target` at body atom `target_body_index`: renames the
// two pairs apart, unifies base's head with the selected body atom, and forms
// the union of base's body with the remaining target body, keeping target's
// head. Returns nothing when the two atoms do not unify.
std::optional<unfold_result> extend_step(const extension_pair& base,
                                         const extension_pair& target,
                                         std::size_t target_body_index);

// Closes sigma0 under extend_step, retaining only results whose residual is
// empty (pairs that are themselves rules over the original vocabulary).
// Deduplication is by canonical key; worklist order is FIFO so ids and
// provenance are deterministic.
extension_set saturate(const program& p, const extension_limits& lim = {});

// Bell numbers, exact.
big_int bell(std::size_t n);

// Number of decimal digits of base^exponent, without materializing the power.
std::string power_digit_count(const big_int& base, const big_int& exponent);

// A possibly astronomical quantity: materialized when its decimal digit count
// is at most digit_cap, otherwise kept in exact power form.
struct big_quantity {
    bool exact = true;
    big_int value;     // valid iff exact
    big_int base;      // power form base^exponent, recorded for powers
    big_int exponent;  // 1 when the value was computed directly
    std::string digits;
    std::string to_string() const;
};

inline constexpr std::size_t default_digit_cap = 10000;

big_quantity big_from_value(const big_int& v);
big_quantity big_power(const big_int& base, const big_int& exponent,
                       std::size_t digit_cap = default_digit_cap);

// Worst-case pair-count exponent and pair bound for a program:
// d = sigma0 size * predicate count * bell(max arity + constant count),
// body bound = (max body size)^d.
struct pair_bounds {
    std::size_t sigma0_size = 0;
    std::size_t n_predicates = 0;
    std::size_t max_body = 0;
    std::size_t max_arity = 0;
    std::size_t n_constants = 0;
    big_int d;
    big_quantity body_bound;
};

pair_bounds compute_pair_bounds(const program& p,
                                std::size_t digit_cap = default_digit_cap);

// Two atoms are type-equivalent when the positional map between their argument
// lists is a well-defined bijection that fixes constants and any variable the
// atoms share.
bool type_equivalent(const atom& a, const atom& b);

}  // namespace tgd
