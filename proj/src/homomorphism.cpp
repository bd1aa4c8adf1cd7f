#include "tgd/homomorphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgd {

void find_homomorphisms(const std::vector<atom>& pattern,
                        const std::vector<atom>& target,
                        const std::function<bool(const substitution&)>& visit) {
    for (const auto& a : target)
        for (const auto& t : a.args)
            if (t.is_var())
                throw std::invalid_argument("homomorphism target must be ground");

    std::vector<std::size_t> order(pattern.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto var_count = [&](std::size_t i) {
        return variables_of(pattern[i]).size();
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return var_count(a) > var_count(b);
    });

    substitution binding;
    bool stopped = false;

    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (stopped) return;
        if (k == order.size()) {
            if (!visit(binding)) stopped = true;
            return;
        }
        const atom& pat = pattern[order[k]];
        for (const auto& cand : target) {
            if (stopped) return;
            if (cand.predicate != pat.predicate ||
                cand.args.size() != pat.args.size())
                continue;
            std::vector<std::string> bound_here;
            bool ok = true;
            for (std::size_t i = 0; i < pat.args.size(); ++i) {
                const term& p = pat.args[i];
                const term& t = cand.args[i];
                if (p.is_var()) {
                    auto it = binding.mapping.find(p.name);
                    if (it == binding.mapping.end()) {
                        binding.mapping.emplace(p.name, t);
                        bound_here.push_back(p.name);
                    } else if (it->second != t) {
                        ok = false;
                        break;
                    }
                } else if (p != t) {
                    ok = false;
                    break;
                }
            }
            if (ok) rec(k + 1);
            for (const auto& v : bound_here) binding.mapping.erase(v);
        }
    };
    rec(0);
}

std::vector<substitution> all_homomorphisms(const std::vector<atom>& pattern,
                                            const std::vector<atom>& target) {
    std::vector<substitution> out;
    find_homomorphisms(pattern, target, [&](const substitution& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

std::optional<substitution> first_homomorphism(const std::vector<atom>& pattern,
                                               const std::vector<atom>& target) {
    std::optional<substitution> out;
    find_homomorphisms(pattern, target, [&](const substitution& s) {
        out = s;
        return false;
    });
    return out;
}

}  // namespace tgd
