#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tgd/chase.hpp"
#include "tgd/extension.hpp"
#include "tgd/syntax.hpp"

namespace tgd {

// Two nulls of an instance are interchangeable for a shape when every
// injective, connected embedding of the shape that covers both nulls admits a
// null-merging map that identifies them while keeping the image inside the
// instance. Checked exhaustively. When the result is false and a
// counterexample sink is given, it receives the embedding that rules the pair
// out.
bool nulls_interchangeable(const labeled_instance& inst, const std::vector<atom>& shape,
                           std::uint64_t null_a, std::uint64_t null_b,
                           std::string* counterexample = nullptr);

// Size bounds for the interchangeability argument, computed from the program,
// the constructed pairs, the database and the shape. The largest value is
// kept in exact power form when materializing it is unreasonable.
struct probe_bound_set {
    big_int d;  // pair-count exponent
    big_int m;  // per-embedding combination bound
    big_quantity big_n;         // m ^ (domain + constants + shape variables)
    bool nprime_exact = false;  // n ^ n, symbolic when astronomical
    big_int nprime_value;
    std::string nprime_rendered;
    std::string nprime_digits;
};

probe_bound_set compute_probe_bounds(const program& p, const extension_set& xs,
                                     const database& d, const std::vector<atom>& shape);

struct probe_pair_outcome {
    std::uint64_t null_recent = 0;  // created after the cutoff
    std::uint64_t null_old = 0;     // created at or below the small level
    bool interchangeable = false;
    std::string counterexample;  // embedding ruling the pair out, when any
};

struct probe_report {
    std::size_t n_small = 0;
    std::size_t n_big = 0;
    std::size_t extra_levels = 0;  // chase runs to n_big + extra_levels
    std::vector<std::uint64_t> recent_nulls;  // creation level in (n_big, n_big + extra]
    std::vector<std::uint64_t> old_nulls;     // creation level <= n_small
    std::vector<probe_pair_outcome> pairs;    // recent x old, ascending
    std::size_t violations = 0;
    bool truncated = false;  // chase hit its atom cap
    probe_bound_set bounds;
};

// Chases to depth n_big + extra_levels and tests every (recent, old) null
// pair for interchangeability under the shape.
probe_report bounded_nulls_probe(const program& p, const extension_set& xs,
                                 const database& d, const std::vector<atom>& shape,
                                 std::size_t n_small, std::size_t n_big,
                                 std::size_t extra_levels, const chase_limits& lim = {});

}  // namespace tgd
