#include "tgd/baselines.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "tgd/nulls.hpp"

namespace tgd {

namespace {

using position = std::pair<std::string, std::size_t>;

std::string pos_str(const position& p) {
    return p.first + "[" + std::to_string(p.second + 1) + "]";
}

std::set<position> positions_of(const std::vector<atom>& atoms, const std::string& var) {
    std::set<position> out;
    for (const auto& a : atoms)
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (a.args[i].is_var() && a.args[i].name == var) out.insert({a.predicate, i});
    return out;
}

}  // namespace

class_verdict is_weakly_acyclic(const program& p) {
    class_verdict v;
    v.class_name = "weakly-acyclic";

    std::set<position> nodes;
    std::set<std::pair<position, position>> regular, special;
    for (const auto& r : p.rules) {
        std::set<std::string> head_vars = variables_of(r.head);
        for (const auto& x : r.universal_vars()) {
            if (!head_vars.count(x)) continue;
            std::set<position> from = positions_of(r.body, x);
            std::set<position> to = positions_of(r.head, x);
            for (const auto& f : from) {
                for (const auto& t : to) regular.insert({f, t});
                for (const auto& ev : r.existential_vars)
                    for (const auto& t : positions_of(r.head, ev)) special.insert({f, t});
            }
        }
        for (const auto& a : r.body)
            for (std::size_t i = 0; i < a.args.size(); ++i) nodes.insert({a.predicate, i});
        for (const auto& a : r.head)
            for (std::size_t i = 0; i < a.args.size(); ++i) nodes.insert({a.predicate, i});
    }

    std::set<std::pair<position, position>> edges = regular;
    edges.insert(special.begin(), special.end());
    auto reaches = [&](const position& from, const position& to) {
        std::set<position> seen{from};
        std::vector<position> stack{from};
        while (!stack.empty()) {
            position cur = stack.back();
            stack.pop_back();
            if (cur == to) return true;
            for (const auto& e : edges)
                if (e.first == cur && seen.insert(e.second).second) stack.push_back(e.second);
        }
        return false;
    };

    for (const auto& s : special) {
        if (reaches(s.second, s.first)) {
            v.member = false;
            v.evidence = "existential edge " + pos_str(s.first) + " => " + pos_str(s.second) +
                         " lies on a cycle";
            return v;
        }
    }
    v.member = true;
    v.evidence = "no cycle through an existential edge";
    return v;
}

class_verdict is_guarded(const program& p) {
    class_verdict v;
    v.class_name = "guarded";
    for (const auto& r : p.rules) {
        std::set<std::string> body_vars = variables_of(r.body);
        bool has_guard = false;
        for (const auto& a : r.body) {
            if (variables_of(a) == body_vars) {
                has_guard = true;
                break;
            }
        }
        if (!has_guard) {
            v.member = false;
            v.evidence = "rule " + r.label + " has no body atom covering all its variables";
            return v;
        }
    }
    v.member = true;
    v.evidence = "every rule has a guard atom";
    return v;
}

class_verdict is_sticky(const program& p) {
    class_verdict v;
    v.class_name = "sticky";

    // marked[(rule, var)]: every body occurrence of var in that rule is marked.
    std::set<std::pair<std::size_t, std::string>> marked;
    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const rule& r = p.rules[ri];
        for (const auto& x : variables_of(r.body)) {
            for (const auto& ha : r.head) {
                if (!variables_of(ha).count(x)) {
                    marked.insert({ri, x});
                    break;
                }
            }
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::set<position> marked_positions;
        for (const auto& [ri, x] : marked)
            for (const auto& pos : positions_of(p.rules[ri].body, x)) marked_positions.insert(pos);
        for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
            const rule& r = p.rules[ri];
            for (const auto& x : r.frontier_vars()) {
                if (marked.count({ri, x})) continue;
                bool hit = false;
                for (const auto& pos : positions_of(r.head, x))
                    if (marked_positions.count(pos)) {
                        hit = true;
                        break;
                    }
                if (hit) {
                    marked.insert({ri, x});
                    changed = true;
                }
            }
        }
    }

    for (const auto& [ri, x] : marked) {
        std::size_t occurrences = 0;
        for (const auto& a : p.rules[ri].body)
            for (const auto& t : a.args)
                if (t.is_var() && t.name == x) ++occurrences;
        if (occurrences >= 2) {
            v.member = false;
            v.evidence = "marked variable " + x + " occurs " + std::to_string(occurrences) +
                         " times in the body of rule " + p.rules[ri].label;
            return v;
        }
    }
    v.member = true;
    v.evidence = "no marked variable is joined in a body";
    return v;
}

class_verdict is_shy(const program& p) {
    class_verdict v;
    v.class_name = "shy";
    null_set_table table = compute_null_sets(p);

    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const rule& r = p.rules[ri];
        for (const auto& x : variables_of(r.body)) {
            std::size_t atoms_with_x = 0;
            for (const auto& a : r.body)
                if (variables_of(a).count(x)) ++atoms_with_x;
            if (atoms_with_x >= 2 && !body_intersection(p, table, ri, x).empty()) {
                v.member = false;
                v.evidence = "variable " + x + " joins two body atoms of rule " + r.label +
                             " and can carry a propagated null";
                return v;
            }
        }
        for (const auto& ha : r.head) {
            std::vector<std::string> uvars;
            for (const auto& x : variables_of(ha))
                if (!r.is_existential(x)) uvars.push_back(x);
            for (std::size_t i = 0; i < uvars.size(); ++i) {
                for (std::size_t j = i + 1; j < uvars.size(); ++j) {
                    bool together = false;
                    for (const auto& a : r.body) {
                        std::set<std::string> av = variables_of(a);
                        if (av.count(uvars[i]) && av.count(uvars[j])) {
                            together = true;
                            break;
                        }
                    }
                    if (together) continue;
                    token_set ti = body_intersection(p, table, ri, uvars[i]);
                    token_set tj = body_intersection(p, table, ri, uvars[j]);
                    token_set common;
                    std::set_intersection(ti.begin(), ti.end(), tj.begin(), tj.end(),
                                          std::inserter(common, common.begin()));
                    if (!common.empty()) {
                        v.member = false;
                        v.evidence = "variables " + uvars[i] + " and " + uvars[j] +
                                     " meet in a head atom of rule " + r.label +
                                     " and share an admissible null";
                        return v;
                    }
                }
            }
        }
    }
    v.member = true;
    v.evidence = "null propagation stays single-sourced";
    return v;
}

program random_ruleset(const gen_params& gp) {
    std::mt19937_64 eng(gp.seed);
    // Raw engine draws only; std distributions are not byte-stable across
    // library versions.
    auto draw = [&](std::size_t n) { return static_cast<std::size_t>(eng() % n); };
    auto coin = [&](double prob) {
        return (static_cast<double>(eng() >> 11) * 0x1.0p-53) < prob;
    };

    std::size_t n_preds = std::max<std::size_t>(1, gp.n_predicates);
    std::vector<std::size_t> arity(n_preds);
    for (auto& a : arity) a = 1 + draw(std::max<std::size_t>(1, gp.max_arity));

    program p;
    std::size_t n_rules = 1 + draw(std::max<std::size_t>(1, gp.max_rules));
    for (std::size_t ri = 0; ri < n_rules; ++ri) {
        rule r;
        r.label = "g" + std::to_string(ri + 1);
        std::size_t n_body = 1 + draw(std::max<std::size_t>(1, gp.max_body_atoms));
        for (std::size_t bi = 0; bi < n_body; ++bi) {
            std::size_t pi = draw(n_preds);
            atom a;
            a.predicate = "p" + std::to_string(pi + 1);
            for (std::size_t k = 0; k < arity[pi]; ++k)
                a.args.push_back(
                    term::var("V" + std::to_string(1 + draw(std::max<std::size_t>(1, gp.n_variables)))));
            if (std::find(r.body.begin(), r.body.end(), a) == r.body.end())
                r.body.push_back(std::move(a));
        }
        std::set<std::string> bv = variables_of(r.body);
        std::vector<std::string> body_vars(bv.begin(), bv.end());
        std::size_t pi = draw(n_preds);
        atom h;
        h.predicate = "p" + std::to_string(pi + 1);
        std::size_t next_ev = 1;
        for (std::size_t k = 0; k < arity[pi]; ++k) {
            if (coin(gp.existential_probability)) {
                std::string ev = "Z" + std::to_string(next_ev++);
                if (std::find(r.existential_vars.begin(), r.existential_vars.end(), ev) ==
                    r.existential_vars.end())
                    r.existential_vars.push_back(ev);
                h.args.push_back(term::var(ev));
            } else {
                h.args.push_back(term::var(body_vars[draw(body_vars.size())]));
            }
        }
        r.head.push_back(std::move(h));
        p.rules.push_back(std::move(r));
    }
    p.validate();
    return p;
}

}  // namespace tgd
