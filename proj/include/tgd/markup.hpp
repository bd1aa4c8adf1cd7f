#pragma once

#include <set>
#include <string>

#include "tgd/syntax.hpp"

namespace tgd {

// Marks are per-variable: a marked variable is marked at every occurrence.
// Position sets are derived for reporting.
struct markup_state {
    std::set<std::string> marked_vars_a;
    std::set<std::string> marked_vars_c;
    std::set<std::size_t> marked_in_a;  // argument indices of a
    std::set<std::size_t> marked_in_c;  // argument indices of c
    std::size_t rounds = 0;
};

// Backward mark propagation over the triple (a, c, a_prime).
// Base: mark in a the variables absent from c; mark in c the variables absent
// from a_prime. Step: a variable of c whose c-occurrences are all marked gets
// marked in a; a variable X of a_prime gets marked in c when the positions of
// X in a_prime, read inside atom a, hold at least one variable and only
// marked ones. Runs to fixpoint. Requires a and a_prime to share a predicate.
markup_state markup_fixpoint(const atom& a, const atom& c, const atom& a_prime);

// The marked variables of a at the fixpoint.
std::set<std::string> m_var(const atom& a, const atom& c, const atom& a_prime);

}  // namespace tgd
