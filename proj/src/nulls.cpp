#include "tgd/nulls.hpp"

#include <algorithm>

namespace tgd {

std::string to_string(const null_token& t) {
    return "n_" + t.rule_label + "_" + t.var_name;
}

const token_set& null_set_table::body_entry(const std::string& predicate,
                                            std::size_t arg_index) const {
    static const token_set empty;
    auto it = position_union.find({predicate, arg_index});
    return it == position_union.end() ? empty : it->second;
}

null_set_table compute_null_sets(const program& p) {
    null_set_table t;
    // All entries start empty; both equation kinds are monotone from below,
    // so iteration reaches the least fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
            const rule& r = p.rules[ri];
            for (std::size_t ai = 0; ai < r.head.size(); ++ai) {
                const atom& h = r.head[ai];
                for (std::size_t pi = 0; pi < h.args.size(); ++pi) {
                    const term& arg = h.args[pi];
                    token_set value;
                    if (arg.is_var()) {
                        if (r.is_existential(arg.name)) {
                            value.insert({r.label, arg.name});
                        } else {
                            value = body_intersection(p, t, ri, arg.name);
                        }
                    }
                    token_set& slot = t.head_entries[{ri, ai, pi}];
                    if (slot != value) {
                        slot = std::move(value);
                        changed = true;
                    }
                }
            }
        }
        std::map<std::pair<std::string, std::size_t>, token_set> unions;
        for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
            const rule& r = p.rules[ri];
            for (std::size_t ai = 0; ai < r.head.size(); ++ai) {
                const atom& h = r.head[ai];
                for (std::size_t pi = 0; pi < h.args.size(); ++pi) {
                    const token_set& e = t.head_entries[{ri, ai, pi}];
                    unions[{h.predicate, pi}].insert(e.begin(), e.end());
                }
            }
        }
        if (unions != t.position_union) {
            t.position_union = std::move(unions);
            changed = true;
        }
    }
    return t;
}

token_set body_intersection(const program& p, const null_set_table& t,
                            std::size_t rule_index, const std::string& var) {
    const rule& r = p.rules[rule_index];
    token_set acc;
    bool first = true;
    for (const auto& b : r.body) {
        for (std::size_t pi = 0; pi < b.args.size(); ++pi) {
            if (!b.args[pi].is_var() || b.args[pi].name != var) continue;
            const token_set& e = t.body_entry(b.predicate, pi);
            if (first) {
                acc = e;
                first = false;
            } else {
                token_set meet;
                std::set_intersection(acc.begin(), acc.end(), e.begin(), e.end(),
                                      std::inserter(meet, meet.begin()));
                acc = std::move(meet);
            }
            if (acc.empty()) return acc;
        }
    }
    if (first) return {};  // variable absent from the body
    return acc;
}

dependency_graph build_dependency_graph(const program& p, const null_set_table& t) {
    dependency_graph g;
    for (const auto& [pos, toks] : t.head_entries)
        g.nodes.insert(toks.begin(), toks.end());
    for (const auto& [pos, toks] : t.position_union)
        g.nodes.insert(toks.begin(), toks.end());

    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const rule& r = p.rules[ri];
        if (r.existential_vars.empty()) continue;
        // Existential targets: one per existential variable that actually
        // occurs in some head atom (guaranteed by validation).
        std::set<std::string> head_exts;
        for (const auto& h : r.head)
            for (const auto& a : h.args)
                if (a.is_var() && r.is_existential(a.name)) head_exts.insert(a.name);
        if (head_exts.empty()) continue;
        for (const auto& y : r.universal_vars()) {
            token_set sources = body_intersection(p, t, ri, y);
            for (const auto& src : sources)
                for (const auto& z : head_exts)
                    g.edges.insert({src, null_token{r.label, z}});
        }
    }
    return g;
}

namespace {

std::set<null_token> reachable_from(const dependency_graph& g,
                                    const std::set<null_token>& start) {
    std::set<null_token> seen = start;
    std::vector<null_token> stack(start.begin(), start.end());
    while (!stack.empty()) {
        null_token v = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : g.edges) {
            if (a == v && !seen.count(b)) {
                seen.insert(b);
                stack.push_back(b);
            }
        }
    }
    return seen;
}

}  // namespace

token_set cyc_null(const dependency_graph& g) {
    // A node is on a cycle iff it reaches itself through at least one edge.
    token_set on_cycle;
    for (const auto& v : g.nodes) {
        std::set<null_token> succ;
        for (const auto& [a, b] : g.edges)
            if (a == v) succ.insert(b);
        std::set<null_token> reach = reachable_from(g, succ);
        if (reach.count(v)) on_cycle.insert(v);
    }
    return reachable_from(g, on_cycle);
}

null_analysis analyze_nulls(const program& p) {
    null_analysis na;
    na.table = compute_null_sets(p);
    na.graph = build_dependency_graph(p, na.table);
    for (const auto& v : na.graph.nodes) {
        std::set<null_token> succ;
        for (const auto& [a, b] : na.graph.edges)
            if (a == v) succ.insert(b);
        if (reachable_from(na.graph, succ).count(v)) na.on_cycle.insert(v);
    }
    na.cyc_tokens = reachable_from(na.graph, na.on_cycle);
    return na;
}

std::set<std::string> var_hat(const null_analysis& na, const std::vector<atom>& B) {
    std::set<std::string> out;
    for (const auto& x : variables_of(B)) {
        token_set acc;
        bool first = true;
        for (const auto& b : B) {
            for (std::size_t pi = 0; pi < b.args.size(); ++pi) {
                if (!b.args[pi].is_var() || b.args[pi].name != x) continue;
                const token_set& e = na.table.body_entry(b.predicate, pi);
                if (first) {
                    acc = e;
                    first = false;
                } else {
                    token_set meet;
                    std::set_intersection(acc.begin(), acc.end(), e.begin(),
                                          e.end(), std::inserter(meet, meet.begin()));
                    acc = std::move(meet);
                }
                if (acc.empty()) break;
            }
            if (!first && acc.empty()) break;
        }
        bool cyclic = false;
        for (const auto& tok : acc)
            if (na.cyc_tokens.count(tok)) {
                cyclic = true;
                break;
            }
        if (cyclic) out.insert(x);
    }
    return out;
}

std::set<std::string> link_vars(const null_analysis& na, const std::vector<atom>& B,
                                const atom& b1, const atom& b2) {
    std::set<std::string> shared;
    std::set<std::string> v1 = variables_of(b1), v2 = variables_of(b2);
    std::set_intersection(v1.begin(), v1.end(), v2.begin(), v2.end(),
                          std::inserter(shared, shared.begin()));
    std::set<std::string> hat = var_hat(na, B);
    std::set<std::string> out;
    std::set_intersection(shared.begin(), shared.end(), hat.begin(), hat.end(),
                          std::inserter(out, out.begin()));
    return out;
}

std::string to_dot(const null_analysis& na) {
    std::string out = "digraph existential_dependencies {\n";
    for (const auto& v : na.graph.nodes) {
        out += "  \"" + to_string(v) + "\"";
        if (na.on_cycle.count(v)) {
            out += " [style=filled, fillcolor=lightcoral]";
        } else if (na.cyc_tokens.count(v)) {
            out += " [style=filled, fillcolor=khaki]";
        }
        out += ";\n";
    }
    for (const auto& [a, b] : na.graph.edges) {
        out += "  \"" + to_string(a) + "\" -> \"" + to_string(b) + "\";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace tgd
