#pragma once

// Independent chase oracle. Shares only the scheduling contract with the
// library (waves by trigger level, firings ordered by rule index then the
// rendered trigger, nulls minted in firing order starting at 1) and none of
// its code: matching is written directly here.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tgd/syntax.hpp"

namespace naive {

struct instance {
    std::vector<tgd::atom> atoms;
    std::vector<std::size_t> levels;
    std::size_t next_null = 1;
    std::map<std::size_t, std::size_t> null_levels;
    bool exhausted = false;
};

using binding = std::map<std::string, tgd::term>;

inline bool match_here(const tgd::atom& pat, const tgd::atom& fact, binding& b,
                       std::vector<std::string>& bound) {
    if (pat.predicate != fact.predicate || pat.args.size() != fact.args.size()) return false;
    for (std::size_t i = 0; i < pat.args.size(); ++i) {
        const tgd::term& pt = pat.args[i];
        const tgd::term& ft = fact.args[i];
        if (!pt.is_var()) {
            if (!(pt == ft)) return false;
            continue;
        }
        auto it = b.find(pt.name);
        if (it != b.end()) {
            if (!(it->second == ft)) return false;
        } else {
            b.emplace(pt.name, ft);
            bound.push_back(pt.name);
        }
    }
    return true;
}

inline void enumerate(const std::vector<tgd::atom>& body, std::size_t i,
                      const std::vector<tgd::atom>& atoms, binding& b,
                      std::vector<binding>& out) {
    if (i == body.size()) {
        out.push_back(b);
        return;
    }
    for (const auto& fact : atoms) {
        std::vector<std::string> bound;
        binding saved = b;
        if (match_here(body[i], fact, b, bound)) {
            enumerate(body, i + 1, atoms, b, out);
        }
        b = std::move(saved);
    }
}

// Renders like the library's substitution display so the firing order
// contract can be compared across the two implementations.
inline std::string render_binding(const binding& b) {
    std::string out = "{";
    bool first = true;
    for (const auto& [v, t] : b) {
        if (!first) out += ", ";
        first = false;
        out += v + "->" + tgd::to_string(t);
    }
    return out + "}";
}

inline instance chase(const tgd::program& p, const tgd::database& d, std::size_t depth) {
    instance inst;
    std::set<tgd::atom> present;
    auto add = [&](const tgd::atom& a, std::size_t lv) {
        if (present.insert(a).second) {
            inst.atoms.push_back(a);
            inst.levels.push_back(lv);
            return true;
        }
        return false;
    };
    for (const auto& f : d.facts) add(f, 0);
    auto level_of = [&](const tgd::atom& a) {
        for (std::size_t i = 0; i < inst.atoms.size(); ++i)
            if (inst.atoms[i] == a) return inst.levels[i];
        return std::size_t{0};
    };

    std::set<std::string> fired;
    struct cand {
        std::size_t rule;
        std::string key;
        binding b;
        std::size_t level;
    };
    auto collect = [&]() {
        std::vector<cand> cs;
        for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
            binding b;
            std::vector<binding> found;
            enumerate(p.rules[ri].body, 0, inst.atoms, b, found);
            std::set<std::string> seen_here;
            for (auto& f : found) {
                binding restricted;
                for (const auto& v : tgd::variables_of(p.rules[ri].body))
                    restricted[v] = f.at(v);
                std::string key = std::to_string(ri) + "|" + render_binding(restricted);
                if (fired.count(key) || !seen_here.insert(key).second) continue;
                std::size_t lv = 0;
                for (const auto& ba : p.rules[ri].body) {
                    tgd::atom img = ba;
                    for (auto& t : img.args)
                        if (t.is_var()) t = restricted.at(t.name);
                    lv = std::max(lv, level_of(img));
                }
                cs.push_back({ri, key, restricted, lv});
            }
        }
        return cs;
    };

    for (std::size_t wave = 0; wave < depth; ++wave) {
        std::vector<cand> cs = collect();
        if (cs.empty()) break;
        std::erase_if(cs, [&](const cand& c) { return c.level != wave; });
        std::sort(cs.begin(), cs.end(), [](const cand& a, const cand& b) {
            if (a.rule != b.rule) return a.rule < b.rule;
            return a.key < b.key;
        });
        for (auto& c : cs) {
            const tgd::rule& r = p.rules[c.rule];
            binding full = c.b;
            for (const auto& ev : r.existential_vars) {
                full[ev] = tgd::term::null(inst.next_null);
                inst.null_levels[inst.next_null] = wave + 1;
                ++inst.next_null;
            }
            for (const auto& ha : r.head) {
                tgd::atom img = ha;
                for (auto& t : img.args)
                    if (t.is_var()) t = full.at(t.name);
                add(img, wave + 1);
            }
            fired.insert(c.key);
        }
    }
    inst.exhausted = collect().empty();
    return inst;
}

}  // namespace naive
