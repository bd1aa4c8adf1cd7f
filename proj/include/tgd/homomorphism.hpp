#pragma once

#include <functional>
#include <vector>

#include "tgd/unify.hpp"

namespace tgd {

// Enumerates every substitution h with apply(pattern, h) contained in target.
// The target must be variable-free (constants and nulls only). Order is
// deterministic: pattern atoms are processed by descending variable count
// (stable on ties), candidate target atoms are tried in input order. The
// visitor returns false to stop enumeration early.
void find_homomorphisms(const std::vector<atom>& pattern,
                        const std::vector<atom>& target,
                        const std::function<bool(const substitution&)>& visit);

// Convenience: all homomorphisms, in enumeration order.
std::vector<substitution> all_homomorphisms(const std::vector<atom>& pattern,
                                            const std::vector<atom>& target);

// Convenience: the first homomorphism if any.
std::optional<substitution> first_homomorphism(const std::vector<atom>& pattern,
                                               const std::vector<atom>& target);

}  // namespace tgd
