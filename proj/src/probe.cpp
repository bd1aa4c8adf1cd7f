#include "tgd/probe.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace tgd {

namespace {

// Terms shared by two atoms, used for the connectivity requirement.
bool atoms_share_term(const atom& a, const atom& b) {
    for (const auto& ta : a.args)
        for (const auto& tb : b.args)
            if (ta == tb) return true;
    return false;
}

std::set<std::uint64_t> nulls_of(const std::vector<atom>& atoms) {
    std::set<std::uint64_t> out;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_null()) out.insert(t.null_index);
    return out;
}

std::vector<atom> substitute_nulls(const std::vector<atom>& atoms,
                                   const std::map<std::uint64_t, std::uint64_t>& m) {
    std::vector<atom> out = atoms;
    for (auto& a : out)
        for (auto& t : a.args)
            if (t.is_null())
                if (auto it = m.find(t.null_index); it != m.end()) t = term::null(it->second);
    return out;
}

// Does some null-to-null map identify na and nb while keeping every image
// atom inside the instance? Exhaustive over assignments.
bool merge_exists(const labeled_instance& inst, const std::vector<atom>& image,
                  std::uint64_t na, std::uint64_t nb) {
    std::set<std::uint64_t> image_nulls = nulls_of(image);
    std::vector<std::uint64_t> inst_nulls;
    for (const auto& [idx, lv] : inst.null_levels) inst_nulls.push_back(idx);
    if (inst_nulls.empty()) return false;

    std::vector<std::uint64_t> rest;
    for (auto n : image_nulls)
        if (n != na && n != nb) rest.push_back(n);

    std::map<std::uint64_t, std::uint64_t> assign;
    // Backtracking over the remaining nulls once the merged target is fixed.
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == rest.size()) {
            std::vector<atom> merged = substitute_nulls(image, assign);
            for (const auto& a : merged)
                if (!inst.contains(a)) return false;
            return true;
        }
        for (auto target : inst_nulls) {
            assign[rest[i]] = target;
            if (place(i + 1)) return true;
        }
        assign.erase(rest[i]);
        return false;
    };

    for (auto target : inst_nulls) {
        assign.clear();
        assign[na] = target;
        assign[nb] = target;
        if (place(0)) return true;
    }
    return false;
}

struct embedding_search {
    const labeled_instance& inst;
    const std::vector<atom>& shape;
    std::uint64_t na, nb;
    std::string* counterexample;
    substitution binding;
    std::set<std::string> used_terms;  // injectivity on variable images
    std::vector<atom> image;
    bool violated = false;

    // Renders a term key for the injectivity set.
    static std::string term_key(const term& t) { return to_string(t); }

    bool bind(const atom& pattern, const atom& target) {
        std::vector<std::string> bound_here;
        for (std::size_t i = 0; i < pattern.args.size(); ++i) {
            const term& pt = pattern.args[i];
            const term& tt = target.args[i];
            if (!pt.is_var()) {
                if (!(pt == tt)) {
                    unbind(bound_here);
                    return false;
                }
                continue;
            }
            auto it = binding.mapping.find(pt.name);
            if (it != binding.mapping.end()) {
                if (!(it->second == tt)) {
                    unbind(bound_here);
                    return false;
                }
                continue;
            }
            std::string key = term_key(tt);
            if (used_terms.count(key)) {  // another variable already took it
                unbind(bound_here);
                return false;
            }
            binding.mapping.emplace(pt.name, tt);
            used_terms.insert(key);
            bound_here.push_back(pt.name);
        }
        return true;
    }

    void unbind(const std::vector<std::string>& names) {
        for (const auto& n : names) {
            auto it = binding.mapping.find(n);
            used_terms.erase(term_key(it->second));
            binding.mapping.erase(it);
        }
    }

    void search(std::size_t si) {
        if (violated) return;
        if (si == shape.size()) {
            std::set<std::uint64_t> image_nulls = nulls_of(image);
            if (!image_nulls.count(na) || !image_nulls.count(nb)) return;
            if (merge_exists(inst, image, na, nb)) return;
            violated = true;
            if (counterexample) {
                std::string img;
                for (const auto& a : image) {
                    if (!img.empty()) img += ", ";
                    img += to_string(a);
                }
                *counterexample = "embedding " + to_string(binding) + " image {" + img + "}";
            }
            return;
        }
        const atom& pat = shape[si];
        for (const auto& cand : inst.atoms) {
            if (cand.predicate != pat.predicate || cand.args.size() != pat.args.size())
                continue;
            if (si > 0 && !atoms_share_term(image.back(), cand)) continue;
            substitution saved = binding;
            std::set<std::string> saved_terms = used_terms;
            if (!bind(pat, cand)) continue;
            image.push_back(cand);
            search(si + 1);
            image.pop_back();
            binding = std::move(saved);
            used_terms = std::move(saved_terms);
            if (violated) return;
        }
    }
};

}  // namespace

bool nulls_interchangeable(const labeled_instance& inst, const std::vector<atom>& shape,
                           std::uint64_t null_a, std::uint64_t null_b,
                           std::string* counterexample) {
    embedding_search es{inst, shape, null_a, null_b, counterexample};
    es.search(0);
    return !es.violated;
}

probe_bound_set compute_probe_bounds(const program& p, const extension_set& xs,
                                     const database& d, const std::vector<atom>& shape) {
    probe_bound_set out;
    pair_bounds pb = compute_pair_bounds(p);
    out.d = pb.d;

    std::size_t max_pair_vars = 1;
    for (const auto& ep : xs.pairs) {
        std::set<std::string> vs = variables_of(ep.body);
        for (const auto& v : variables_of(ep.head)) vs.insert(v);
        max_pair_vars = std::max(max_pair_vars, vs.size());
    }
    std::size_t shape_vars = variables_of(shape).size();
    out.m = out.d * big_int(max_pair_vars) * big_int(std::max<std::size_t>(pb.max_arity, 1)) *
            big_int(std::max<std::size_t>(shape_vars, 1));

    std::set<std::string> dom;
    for (const auto& f : d.facts)
        for (const auto& t : f.args)
            if (t.is_const()) dom.insert(t.name);
    big_int exponent = big_int(dom.size()) + big_int(pb.n_constants) + big_int(shape_vars);
    out.big_n = big_power(out.m, exponent);

    if (out.big_n.exact) {
        big_quantity np = big_power(out.big_n.value, out.big_n.value);
        out.nprime_exact = np.exact;
        if (np.exact) out.nprime_value = np.value;
        out.nprime_rendered = np.to_string();
        out.nprime_digits = np.digits;
    } else {
        out.nprime_exact = false;
        out.nprime_rendered = "(" + out.big_n.to_string() + ")^(" + out.big_n.to_string() + ")";
        out.nprime_digits = "astronomical";
    }
    return out;
}

probe_report bounded_nulls_probe(const program& p, const extension_set& xs,
                                 const database& d, const std::vector<atom>& shape,
                                 std::size_t n_small, std::size_t n_big,
                                 std::size_t extra_levels, const chase_limits& lim) {
    probe_report rep;
    rep.n_small = n_small;
    rep.n_big = n_big;
    rep.extra_levels = extra_levels;
    rep.bounds = compute_probe_bounds(p, xs, d, shape);

    labeled_instance inst = chase_to_level(p, d, n_big + extra_levels, lim);
    rep.truncated = inst.truncated;
    for (const auto& [idx, lv] : inst.null_levels) {
        if (lv > n_big && lv <= n_big + extra_levels) rep.recent_nulls.push_back(idx);
        if (lv <= n_small) rep.old_nulls.push_back(idx);
    }
    std::sort(rep.recent_nulls.begin(), rep.recent_nulls.end());
    std::sort(rep.old_nulls.begin(), rep.old_nulls.end());

    for (auto nr : rep.recent_nulls) {
        for (auto no : rep.old_nulls) {
            probe_pair_outcome oc;
            oc.null_recent = nr;
            oc.null_old = no;
            oc.interchangeable = nulls_interchangeable(inst, shape, nr, no, &oc.counterexample);
            if (!oc.interchangeable) ++rep.violations;
            rep.pairs.push_back(std::move(oc));
        }
    }
    return rep;
}

}  // namespace tgd
