#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tgd/syntax.hpp"

namespace tgd {

// Maps variable names to terms; identity outside its domain. Constants and
// nulls are never mapped.
struct substitution {
    std::map<std::string, term> mapping;

    term operator()(const term& t) const {
        if (!t.is_var()) return t;
        auto it = mapping.find(t.name);
        return it == mapping.end() ? t : it->second;
    }

    bool empty() const { return mapping.empty(); }

    friend bool operator==(const substitution&, const substitution&) = default;
};

atom apply(const atom& a, const substitution& s);
std::vector<atom> apply(const std::vector<atom>& atoms, const substitution& s);

// (s2 compose s1): first s1, then s2.
substitution compose(const substitution& s2, const substitution& s1);

std::string to_string(const substitution& s);

// Most general unifier of two atoms, treating the variable spaces of the two
// atoms as distinct even when names coincide. Returns (theta1, theta2) with
// apply(a1, theta1) == apply(a2, theta2); absent on predicate/arity mismatch
// or constant clash. Orientation is canonical: each merged class is named by
// its lexicographically smallest member name still available, constants win
// over variables.
std::optional<std::pair<substitution, substitution>> mgu(const atom& a1,
                                                         const atom& a2);

// Positional matcher: a substitution s over variables_of(pattern) with
// apply(pattern, s) == target, if one exists. Constants must agree exactly.
std::optional<substitution> match_atom(const atom& pattern, const atom& target);

// As match_atom but images restricted to variables (no constants, no nulls).
std::optional<substitution> match_atom_vars_only(const atom& pattern,
                                                 const atom& target);

}  // namespace tgd
