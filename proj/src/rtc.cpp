#include "tgd/rtc.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tgd/markup.hpp"

namespace tgd {

namespace {

std::vector<std::size_t> sorted_pair_order(const extension_set& xs) {
    std::vector<std::size_t> order(xs.pairs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
        const auto& a = xs.pairs[l];
        const auto& b = xs.pairs[r];
        if (a.body.size() != b.body.size()) return a.body.size() < b.body.size();
        return a.key < b.key;
    });
    return order;
}

struct path_list {
    std::vector<std::vector<std::size_t>> paths;
    bool capped = false;
};

void path_dfs(const std::vector<std::vector<char>>& adj, std::size_t cur, std::size_t to,
              std::vector<char>& visited, std::vector<std::size_t>& path, path_list& out,
              std::size_t budget) {
    if (out.capped) return;
    if (cur == to) {
        if (out.paths.size() >= budget) {
            out.capped = true;
            return;
        }
        out.paths.push_back(path);
        return;
    }
    for (std::size_t nxt = 0; nxt < adj.size(); ++nxt) {
        if (visited[nxt] || !adj[cur][nxt]) continue;
        visited[nxt] = 1;
        path.push_back(nxt);
        path_dfs(adj, nxt, to, visited, path, out, budget);
        path.pop_back();
        visited[nxt] = 0;
        if (out.capped) return;
    }
}

path_list simple_paths(const std::vector<std::vector<char>>& adj, std::size_t from,
                       std::size_t to, std::size_t budget) {
    path_list out;
    std::vector<char> visited(adj.size(), 0);
    std::vector<std::size_t> path{from};
    visited[from] = 1;
    path_dfs(adj, from, to, visited, path, out, budget);
    std::sort(out.paths.begin(), out.paths.end(),
              [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return out;
}

// Union-find over solver tokens; a class may capture at most one concrete
// term (a constant or a variable of the head's namespace).
struct merge_table {
    std::map<std::string, std::string> parent;
    std::map<std::string, term> value;

    std::string find(const std::string& s) {
        auto it = parent.find(s);
        if (it == parent.end()) {
            parent[s] = s;
            return s;
        }
        if (it->second == s) return s;
        std::string root = find(it->second);
        parent[s] = root;
        return root;
    }

    bool set_value(const std::string& s, const term& t) {
        std::string r = find(s);
        auto it = value.find(r);
        if (it != value.end()) return it->second == t;
        value.emplace(r, t);
        return true;
    }

    bool unite(const std::string& a, const std::string& b) {
        std::string ra = find(a);
        std::string rb = find(b);
        if (ra == rb) return true;
        auto va = value.find(ra);
        auto vb = value.find(rb);
        if (va != value.end() && vb != value.end() && !(va->second == vb->second)) return false;
        if (vb != value.end() && va == value.end()) value.emplace(ra, vb->second);
        if (vb != value.end()) value.erase(rb);
        parent[rb] = ra;
        return true;
    }
};

struct second_pair_solution {
    atom a_prime;
    substitution theta;
    std::string eta_rendered;
};

// Finds an instantiation eta of the renamed second pair with
// b_prime * eta == c and a positional variables-only map from a onto
// h_prime * eta. Free positions receive fresh W-names in position order.
std::optional<second_pair_solution> solve_second_pair(const atom& a, const atom& c,
                                                      const atom& b_prime,
                                                      const atom& h_prime) {
    substitution eta;
    for (std::size_t i = 0; i < b_prime.args.size(); ++i) {
        const term& tb = b_prime.args[i];
        const term& tc = c.args[i];
        if (!tb.is_var()) {
            if (!(tb == tc)) return std::nullopt;
            continue;
        }
        auto [it, fresh] = eta.mapping.emplace(tb.name, tc);
        if (!fresh && !(it->second == tc)) return std::nullopt;
    }

    merge_table mt;
    auto a_token = [](const std::string& v) { return "A:" + v; };
    auto q_token = [](const std::string& v) { return "Q:" + v; };

    for (std::size_t i = 0; i < a.args.size(); ++i) {
        const term& ta = a.args[i];
        const term& th = h_prime.args[i];
        bool h_concrete = false;
        term h_value;
        std::string h_tok;
        if (!th.is_var()) {
            h_concrete = true;
            h_value = th;
        } else if (auto it = eta.mapping.find(th.name); it != eta.mapping.end()) {
            h_concrete = true;
            h_value = it->second;
        } else {
            h_tok = q_token(th.name);
        }
        if (!ta.is_var()) {
            if (h_concrete) {
                if (!(h_value == ta)) return std::nullopt;
            } else if (!mt.set_value(h_tok, ta)) {
                return std::nullopt;
            }
        } else {
            if (h_concrete) {
                // The map from a must land on variables.
                if (!h_value.is_var()) return std::nullopt;
                if (!mt.set_value(a_token(ta.name), h_value)) return std::nullopt;
            } else if (!mt.unite(a_token(ta.name), h_tok)) {
                return std::nullopt;
            }
        }
    }

    // Name the still-free classes in head-position order.
    std::size_t next_fresh = 1;
    for (std::size_t i = 0; i < h_prime.args.size(); ++i) {
        const term& th = h_prime.args[i];
        if (!th.is_var() || eta.mapping.count(th.name)) continue;
        std::string root = mt.find(q_token(th.name));
        if (!mt.value.count(root))
            mt.value.emplace(root, term::var("W" + std::to_string(next_fresh++)));
    }

    second_pair_solution sol;
    for (const auto& v : variables_of(a)) {
        std::string root = mt.find(a_token(v));
        auto it = mt.value.find(root);
        if (it == mt.value.end() || !it->second.is_var()) return std::nullopt;
        sol.theta.mapping.emplace(v, it->second);
    }

    sol.a_prime.predicate = h_prime.predicate;
    for (const term& th : h_prime.args) {
        if (!th.is_var()) {
            sol.a_prime.args.push_back(th);
            continue;
        }
        if (auto it = eta.mapping.find(th.name); it != eta.mapping.end()) {
            sol.a_prime.args.push_back(it->second);
            continue;
        }
        sol.a_prime.args.push_back(mt.value.at(mt.find(q_token(th.name))));
    }

    substitution eta_full = eta;
    for (const auto& v : variables_of(h_prime))
        if (!eta_full.mapping.count(v))
            eta_full.mapping.emplace(v, mt.value.at(mt.find(q_token(v))));
    sol.eta_rendered = to_string(eta_full);
    return sol;
}

term rename_term_suffix(const term& t, const std::string& suffix) {
    return t.is_var() ? term::var(t.name + suffix) : t;
}

atom rename_atom_suffix(const atom& a, const std::string& suffix) {
    atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(rename_term_suffix(t, suffix));
    return out;
}

}  // namespace

rtc_result find_rtcs(const extension_set& xs, const null_analysis& na,
                     const rtc_options& opt) {
    rtc_result out;
    std::vector<std::size_t> order = sorted_pair_order(xs);

    for (std::size_t pid : order) {
        const extension_pair& P = xs.pairs[pid];
        const std::vector<atom>& B = P.body;
        const atom& c = P.head;
        if (B.size() < 2) continue;

        std::set<std::string> vh = var_hat(na, B);
        std::set<std::string> head_vars = variables_of(c);
        std::vector<std::string> pivots;
        for (const auto& v : vh)
            if (head_vars.count(v)) pivots.push_back(v);
        if (pivots.size() < 2) continue;

        std::size_t n = B.size();
        std::vector<std::vector<std::set<std::string>>> link(
            n, std::vector<std::set<std::string>>(n));
        std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                link[i][j] = link_vars(na, B, B[i], B[j]);
                adj[i][j] = link[i][j].empty() ? 0 : 1;
            }
        }
        std::map<std::pair<std::size_t, std::size_t>, path_list> path_cache;

        std::vector<std::set<std::string>> atom_vars(n);
        for (std::size_t i = 0; i < n; ++i) atom_vars[i] = variables_of(B[i]);

        for (const std::string& x : pivots) {
            for (const std::string& z : pivots) {
                if (x == z) continue;

                std::optional<atom> guard;
                for (const atom& d : B) {
                    std::set<std::string> dv = variables_of(d);
                    if (dv.count(x) && dv.count(z)) {
                        guard = d;
                        break;
                    }
                }
                if (opt.unguarded_only && guard) continue;

                for (std::size_t ai = 0; ai < n; ++ai) {
                    if (!atom_vars[ai].count(x)) continue;
                    for (std::size_t bi = 0; bi < n; ++bi) {
                        if (bi == ai || !atom_vars[bi].count(z)) continue;

                        auto pc = path_cache.find({ai, bi});
                        if (pc == path_cache.end()) {
                            pc = path_cache
                                     .emplace(std::make_pair(ai, bi),
                                              simple_paths(adj, ai, bi, opt.path_budget))
                                     .first;
                            if (pc->second.capped) out.paths_capped = true;
                        }
                        if (pc->second.paths.empty()) continue;

                        // Fills route-independent fields and searches for a
                        // qualifying path step; returns true when a witness
                        // was emitted and the caller should stop everything.
                        auto try_route = [&](const atom& a_prime, const substitution& theta,
                                             bool via_second, std::size_t qid,
                                             const atom& b_prime,
                                             const std::string& eta_rendered) -> bool {
                            std::set<std::string> mv = m_var(B[ai], c, a_prime);
                            std::set<std::string> apv = variables_of(a_prime);
                            for (const auto& path : pc->second.paths) {
                                for (std::size_t step = 0; step + 1 < path.size(); ++step) {
                                    const std::set<std::string>& ls =
                                        link[path[step]][path[step + 1]];
                                    for (const std::string& y : ls) {
                                        if (y == x || y == z) continue;
                                        bool ok = true;
                                        if (apv.count(y)) {
                                            for (std::size_t j = 0; j < a_prime.args.size();
                                                 ++j) {
                                                const term& tp = a_prime.args[j];
                                                if (!tp.is_var() || tp.name != y) continue;
                                                const term& in_a = B[ai].args[j];
                                                if (in_a.is_var() && !mv.count(in_a.name)) {
                                                    ok = false;
                                                    break;
                                                }
                                            }
                                        }
                                        if (!ok) continue;
                                        rtc_witness w;
                                        w.pair_id = P.id;
                                        w.a = B[ai];
                                        w.b = B[bi];
                                        w.c = c;
                                        w.x = x;
                                        w.z = z;
                                        w.a_prime = a_prime;
                                        w.theta = theta;
                                        w.via_second_pair = via_second;
                                        w.second_pair_id = qid;
                                        w.b_prime = b_prime;
                                        w.eta_rendered = eta_rendered;
                                        for (std::size_t pi : path) w.link_path.push_back(B[pi]);
                                        for (std::size_t s2 = 0; s2 + 1 < path.size(); ++s2)
                                            w.path_links.push_back(link[path[s2]][path[s2 + 1]]);
                                        w.failing_link_index = step;
                                        w.failing_link_var = y;
                                        w.m_var_set = mv;
                                        w.guard = guard;
                                        out.witnesses.push_back(std::move(w));
                                        return true;
                                    }
                                }
                            }
                            return false;
                        };

                        auto emitted_stop = [&]() {
                            if (opt.stop_at_first) return true;
                            if (opt.max_witnesses && out.witnesses.size() >= opt.max_witnesses) {
                                out.truncated = true;
                                return true;
                            }
                            return false;
                        };

                        // Route 1: the head itself plays a_prime.
                        if (B[ai].predicate == c.predicate &&
                            B[ai].args.size() == c.args.size()) {
                            if (auto th = match_atom_vars_only(B[ai], c)) {
                                if (try_route(c, *th, false, 0, atom{}, "") && emitted_stop())
                                    return out;
                            }
                        }

                        // Route 2: a second pair covers c and reproduces a.
                        for (std::size_t qid : order) {
                            const extension_pair& Q = xs.pairs[qid];
                            if (Q.head.predicate != B[ai].predicate ||
                                Q.head.args.size() != B[ai].args.size())
                                continue;
                            atom h_prime = rename_atom_suffix(Q.head, "'");
                            bool stop_all = false;
                            for (std::size_t qb = 0; qb < Q.body.size(); ++qb) {
                                if (Q.body[qb].predicate != c.predicate ||
                                    Q.body[qb].args.size() != c.args.size())
                                    continue;
                                atom b_prime = rename_atom_suffix(Q.body[qb], "'");
                                auto sol = solve_second_pair(B[ai], c, b_prime, h_prime);
                                if (!sol) continue;
                                if (!variables_of(sol->a_prime).count(x)) continue;
                                if (try_route(sol->a_prime, sol->theta, true, Q.id, b_prime,
                                              sol->eta_rendered) &&
                                    emitted_stop()) {
                                    stop_all = true;
                                    break;
                                }
                            }
                            if (stop_all) return out;
                        }
                    }
                }
            }
        }
    }
    return out;
}

tg_verdict classify_tg(const extension_set& xs, const null_analysis& na,
                       const rtc_options& opt_in) {
    rtc_options opt = opt_in;
    opt.unguarded_only = true;
    opt.stop_at_first = true;
    rtc_result rr = find_rtcs(xs, na, opt);

    tg_verdict v;
    v.pairs_examined = xs.pairs.size();
    v.saturated = xs.saturated;
    v.capped = xs.capped;
    if (!rr.witnesses.empty()) {
        v.status = tg_status::non_member;
        v.witness = rr.witnesses.front();
    } else if (!xs.saturated) {
        v.status = tg_status::inconclusive;
        v.reason =
            "pair construction hit a cap before saturating; "
            "no unguarded witness among constructed pairs";
    } else if (rr.paths_capped) {
        v.status = tg_status::inconclusive;
        v.reason = "link path enumeration hit its budget";
    } else {
        v.status = tg_status::member;
    }
    return v;
}

tg_verdict is_triangularly_guarded(const program& p, const extension_limits& lim) {
    extension_set xs = saturate(p, lim);
    null_analysis na = analyze_nulls(p);
    return classify_tg(xs, na);
}

}  // namespace tgd
