#include "tgd/unify.hpp"

#include <algorithm>
#include <set>

namespace tgd {

atom apply(const atom& a, const substitution& s) {
    atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(s(t));
    return out;
}

std::vector<atom> apply(const std::vector<atom>& atoms, const substitution& s) {
    std::vector<atom> out;
    out.reserve(atoms.size());
    for (const auto& a : atoms) out.push_back(apply(a, s));
    return out;
}

substitution compose(const substitution& s2, const substitution& s1) {
    substitution out;
    for (const auto& [v, t] : s1.mapping) out.mapping[v] = s2(t);
    for (const auto& [v, t] : s2.mapping)
        if (!out.mapping.count(v)) out.mapping[v] = t;
    return out;
}

std::string to_string(const substitution& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : s.mapping) {
        if (!first) out += ", ";
        first = false;
        out += v;
        out += "->";
        out += to_string(t);
    }
    out += '}';
    return out;
}

namespace {

// Union-find over the disjoint variable spaces of two atoms. Node ids:
// side-0 variables then side-1 variables; each class may capture at most one
// constant.
struct uf {
    std::vector<int> parent;
    explicit uf(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::optional<std::pair<substitution, substitution>> mgu(const atom& a1,
                                                         const atom& a2) {
    if (a1.predicate != a2.predicate || a1.args.size() != a2.args.size())
        return std::nullopt;

    // Index the variables of each side separately.
    std::map<std::string, int> idx1, idx2;
    for (const auto& t : a1.args)
        if (t.is_var() && !idx1.count(t.name))
            idx1.emplace(t.name, static_cast<int>(idx1.size()));
    int base2 = static_cast<int>(idx1.size());
    for (const auto& t : a2.args)
        if (t.is_var() && !idx2.count(t.name))
            idx2.emplace(t.name, base2 + static_cast<int>(idx2.size()));

    uf classes(idx1.size() + idx2.size());
    std::map<int, term> bound;  // class root -> captured constant/null

    auto bind_const = [&](int node, const term& c) -> bool {
        int r = classes.find(node);
        auto it = bound.find(r);
        if (it != bound.end()) return it->second == c;
        bound.emplace(r, c);
        return true;
    };
    auto unite = [&](int x, int y) -> bool {
        int rx = classes.find(x), ry = classes.find(y);
        if (rx == ry) return true;
        std::optional<term> cx, cy;
        if (auto it = bound.find(rx); it != bound.end()) cx = it->second;
        if (auto it = bound.find(ry); it != bound.end()) cy = it->second;
        if (cx && cy && *cx != *cy) return false;
        classes.unite(rx, ry);
        int r = classes.find(rx);
        bound.erase(rx);
        bound.erase(ry);
        if (cx) bound.emplace(r, *cx);
        else if (cy) bound.emplace(r, *cy);
        return true;
    };

    for (std::size_t i = 0; i < a1.args.size(); ++i) {
        const term& t1 = a1.args[i];
        const term& t2 = a2.args[i];
        if (t1.is_var() && t2.is_var()) {
            if (!unite(idx1[t1.name], idx2[t2.name])) return std::nullopt;
        } else if (t1.is_var()) {
            if (!bind_const(idx1[t1.name], t2)) return std::nullopt;
        } else if (t2.is_var()) {
            if (!bind_const(idx2[t2.name], t1)) return std::nullopt;
        } else {
            if (t1 != t2) return std::nullopt;
        }
    }

    // Name unbound classes canonically: classes ordered by their smallest
    // member name; each takes its smallest member name not yet claimed, or a
    // deterministic fresh name when all members are claimed.
    std::map<int, std::vector<std::string>> members;
    for (const auto& [name, id] : idx1) members[classes.find(id)].push_back(name);
    for (const auto& [name, id] : idx2) members[classes.find(id)].push_back(name);
    std::vector<std::pair<std::string, int>> order;
    for (auto& [root, names] : members) {
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        order.emplace_back(names.front(), root);
    }
    std::sort(order.begin(), order.end());

    std::map<int, term> rep;
    std::set<std::string> taken;
    for (const auto& [first_name, root] : order) {
        if (auto it = bound.find(root); it != bound.end()) {
            rep.emplace(root, it->second);
            continue;
        }
        std::string chosen;
        for (const auto& name : members[root]) {
            if (!taken.count(name)) {
                chosen = name;
                break;
            }
        }
        if (chosen.empty()) {
            std::size_t k = 1;
            do {
                chosen = first_name + "_" + std::to_string(k++);
            } while (taken.count(chosen));
        }
        taken.insert(chosen);
        rep.emplace(root, term::var(chosen));
    }

    substitution s1, s2;
    for (const auto& [name, id] : idx1) s1.mapping[name] = rep.at(classes.find(id));
    for (const auto& [name, id] : idx2) s2.mapping[name] = rep.at(classes.find(id));
    return std::make_pair(std::move(s1), std::move(s2));
}

std::optional<substitution> match_atom(const atom& pattern, const atom& target) {
    if (pattern.predicate != target.predicate ||
        pattern.args.size() != target.args.size())
        return std::nullopt;
    substitution s;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const term& p = pattern.args[i];
        const term& t = target.args[i];
        if (p.is_var()) {
            auto it = s.mapping.find(p.name);
            if (it == s.mapping.end())
                s.mapping.emplace(p.name, t);
            else if (it->second != t)
                return std::nullopt;
        } else if (p != t) {
            return std::nullopt;
        }
    }
    return s;
}

std::optional<substitution> match_atom_vars_only(const atom& pattern,
                                                 const atom& target) {
    auto s = match_atom(pattern, target);
    if (!s) return std::nullopt;
    for (const auto& [v, t] : s->mapping)
        if (!t.is_var()) return std::nullopt;
    return s;
}

}  // namespace tgd
