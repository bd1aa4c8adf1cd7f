#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "tgd/syntax.hpp"

namespace tgd {

// Token for the fresh values an existential variable of a rule can mint.
// Distinct (rule, variable) pairs are distinct tokens.
struct null_token {
    std::string rule_label;
    std::string var_name;

    friend auto operator<=>(const null_token&, const null_token&) = default;
    friend bool operator==(const null_token&, const null_token&) = default;
};

std::string to_string(const null_token& t);

using token_set = std::set<null_token>;

// Identifies one argument position of one head-atom occurrence.
struct head_position {
    std::size_t rule_index;
    std::size_t atom_index;
    std::size_t arg_index;

    friend auto operator<=>(const head_position&, const head_position&) = default;
};

struct null_set_table {
    // Least fixpoint of: existential head position -> its token singleton;
    // universal head position -> intersection over the variable's body
    // positions; constant head position -> empty; body position -> union of
    // all head entries at the same (predicate, argument index).
    std::map<head_position, token_set> head_entries;
    std::map<std::pair<std::string, std::size_t>, token_set> position_union;

    const token_set& body_entry(const std::string& predicate,
                                std::size_t arg_index) const;
};

struct dependency_graph {
    std::set<null_token> nodes;
    std::set<std::pair<null_token, null_token>> edges;
};

// Null-set table, dependency graph and the cyclic token closure for one
// program, computed together since they share the fixpoint.
struct null_analysis {
    null_set_table table;
    dependency_graph graph;
    token_set on_cycle;   // tokens lying on a directed cycle
    token_set cyc_tokens; // on-cycle tokens plus everything reachable from them
};

null_set_table compute_null_sets(const program& p);
dependency_graph build_dependency_graph(const program& p, const null_set_table& t);
token_set cyc_null(const dependency_graph& g);
null_analysis analyze_nulls(const program& p);

// Per-rule body intersection for one variable: meet of the variable's body
// position entries. Empty when the variable has no body occurrence.
token_set body_intersection(const program& p, const null_set_table& t,
                            std::size_t rule_index, const std::string& var);

// Variables of B whose every occurrence can carry a cyclic token.
std::set<std::string> var_hat(const null_analysis& na, const std::vector<atom>& B);

// Shared cyclically-affected variables of two atoms of B.
std::set<std::string> link_vars(const null_analysis& na, const std::vector<atom>& B,
                                const atom& b1, const atom& b2);

// Deterministic DOT rendering; on-cycle nodes are filled, nodes merely
// reachable from a cycle are styled distinctly.
std::string to_dot(const null_analysis& na);

}  // namespace tgd
