#pragma once

#include <map>
#include <string>
#include <vector>

#include "tgd/syntax.hpp"

namespace tgd {

// A body/head pair in canonical form: variables renamed to V1, V2, ... in
// order of first occurrence over (body atoms in canonical order, then head).
// Two pairs receive the same key iff they are related by a variable bijection
// fixing constants.
struct canonical_pair {
    std::vector<atom> body;  // canonical order, duplicates removed
    atom head;
    std::string key;         // rendered canonical form, usable as a dedup key
    // original variable name -> canonical name; the inverse is a bijection.
    std::map<std::string, std::string> renaming;
};

// Canonical labeling via color refinement plus a bounded permutation search
// over same-color atom groups; the search explores at most perm_cap
// arrangements per group product, which is exhaustive for every body size
// reachable under the default limits.
canonical_pair canonicalize(const std::vector<atom>& body, const atom& head,
                            std::size_t perm_cap = 40320);

}  // namespace tgd
