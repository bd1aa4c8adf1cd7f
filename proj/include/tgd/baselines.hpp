#pragma once

#include <cstdint>
#include <string>

#include "tgd/syntax.hpp"

namespace tgd {

struct class_verdict {
    std::string class_name;
    bool member = false;
    std::string evidence;  // witness of failure, or a short confirmation
};

// Position graph acyclicity: no cycle through an edge introduced by an
// existential head position.
class_verdict is_weakly_acyclic(const program& p);

// Every rule body has an atom containing all body variables.
class_verdict is_guarded(const program& p);

// Marking procedure: a body variable missing from some head atom is marked;
// a head variable standing at a position that carries a mark in some body
// gets its body occurrences marked. No marked variable may occur twice in a
// body.
class_verdict is_sticky(const program& p);

// Null-propagation discipline: a variable shared by two body atoms must not
// admit any propagated null, and two universal variables meeting in one head
// atom without a common body atom must not share an admissible null.
class_verdict is_shy(const program& p);

struct gen_params {
    std::uint64_t seed = 0;
    std::size_t max_rules = 3;
    std::size_t max_body_atoms = 2;
    std::size_t max_arity = 3;
    std::size_t n_predicates = 3;
    std::size_t n_variables = 4;
    double existential_probability = 0.3;
};

// Deterministic random ruleset: the same parameters always produce the same
// program, across platforms. Head variables are drawn from the body, so the
// result always validates.
program random_ruleset(const gen_params& gp);

}  // namespace tgd
