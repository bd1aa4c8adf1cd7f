#include "tgd/canonical.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tgd {
namespace {

// Per-atom shape ignoring variable identities: constants literal, variables
// replaced by their local first-occurrence index.
std::string local_pattern(const atom& a) {
    std::string out = a.predicate;
    out += '/';
    std::map<std::string, std::size_t> seen;
    for (const auto& t : a.args) {
        if (t.is_var()) {
            auto [it, fresh] = seen.emplace(t.name, seen.size());
            out += 'v' + std::to_string(it->second);
        } else if (t.is_const()) {
            out += "c<" + t.name + ">";
        } else {
            out += "n<" + std::to_string(t.null_index) + ">";
        }
        out += ';';
    }
    return out;
}

struct rendering {
    std::string text;
    std::vector<std::size_t> order;  // body atom indices in rendered order
    std::map<std::string, std::string> renaming;
};

rendering render(const std::vector<atom>& body,
                 const std::vector<std::size_t>& order, const atom& head) {
    rendering r;
    r.order = order;
    std::size_t next = 0;
    auto name_of = [&](const term& t) -> std::string {
        if (t.is_const()) return "'" + t.name + "'";
        if (t.is_null()) return "_n" + std::to_string(t.null_index);
        auto it = r.renaming.find(t.name);
        if (it == r.renaming.end())
            it = r.renaming.emplace(t.name, "V" + std::to_string(++next)).first;
        return it->second;
    };
    auto emit = [&](const atom& a) {
        r.text += a.predicate;
        r.text += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) r.text += ',';
            r.text += name_of(a.args[i]);
        }
        r.text += ')';
    };
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) r.text += ' ';
        emit(body[order[i]]);
    }
    r.text += " | ";
    emit(head);
    return r;
}

}  // namespace

canonical_pair canonicalize(const std::vector<atom>& body_in, const atom& head,
                            std::size_t perm_cap) {
    std::vector<atom> body;
    for (const auto& a : body_in)
        if (std::find(body.begin(), body.end(), a) == body.end())
            body.push_back(a);

    const std::size_t n = body.size();

    // Color refinement over the atom/variable incidence structure. Signatures
    // are compressed to integer ranks each round so color size stays bounded;
    // rank order is derived from sorted signatures, which keeps both the
    // partition and the ordering stable across variable renamings.
    auto all_atoms = [&](std::size_t i) -> const atom& {
        return i < n ? body[i] : head;
    };
    std::vector<std::string> pattern(n + 1);
    for (std::size_t i = 0; i < n; ++i) pattern[i] = "B:" + local_pattern(body[i]);
    pattern[n] = "H:" + local_pattern(head);

    std::vector<std::string> var_names;
    {
        std::set<std::string> vars;
        for (std::size_t i = 0; i <= n; ++i)
            for (const auto& t : all_atoms(i).args)
                if (t.is_var()) vars.insert(t.name);
        var_names.assign(vars.begin(), vars.end());
    }
    std::map<std::string, std::size_t> var_index;
    for (std::size_t i = 0; i < var_names.size(); ++i) var_index[var_names[i]] = i;

    auto compress = [](std::vector<std::string>& sig, std::vector<std::size_t>& col) {
        std::vector<std::string> distinct(sig.begin(), sig.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (std::size_t i = 0; i < sig.size(); ++i)
            col[i] = std::lower_bound(distinct.begin(), distinct.end(), sig[i]) -
                     distinct.begin();
        return distinct.size();
    };

    std::vector<std::size_t> atom_col(n + 1, 0);
    std::vector<std::size_t> var_col(var_names.size(), 0);
    {
        std::vector<std::string> sig(pattern);
        compress(sig, atom_col);
    }
    std::size_t n_colors = 0;
    for (std::size_t round = 0; round < var_names.size() + n + 2; ++round) {
        // Variable signature: own color plus sorted (atom color, position)
        // occurrence list. Including the old color makes refinement monotone.
        std::vector<std::vector<std::string>> occ(var_names.size());
        for (std::size_t i = 0; i <= n; ++i) {
            const atom& a = all_atoms(i);
            for (std::size_t p = 0; p < a.args.size(); ++p)
                if (a.args[p].is_var())
                    occ[var_index[a.args[p].name]].push_back(
                        std::to_string(atom_col[i]) + "@" + std::to_string(p));
        }
        std::vector<std::string> var_sig(var_names.size());
        for (std::size_t v = 0; v < var_names.size(); ++v) {
            std::sort(occ[v].begin(), occ[v].end());
            std::string c = std::to_string(var_col[v]) + ":";
            for (const auto& s : occ[v]) c += s + "&";
            var_sig[v] = c;
        }
        // Atom signature: own color plus per-argument variable colors.
        std::vector<std::string> atom_sig(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            const atom& a = all_atoms(i);
            std::string c = std::to_string(atom_col[i]) + ":";
            for (const auto& t : a.args)
                c += t.is_var()
                         ? "[" + std::to_string(var_col[var_index[t.name]]) + "]"
                         : "[.]";
            atom_sig[i] = c;
        }
        std::size_t na = compress(atom_sig, atom_col);
        std::size_t nv = compress(var_sig, var_col);
        if (na + nv == n_colors) break;  // no class split: partition is stable
        n_colors = na + nv;
    }

    // Group same-color body atoms; groups ordered by base pattern first so
    // distinct predicates keep their lexicographic order, then by color rank.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    auto atom_key = [&](std::size_t i) {
        return std::make_pair(pattern[i], atom_col[i]);
    };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return atom_key(a) < atom_key(b);
    });
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && atom_key(idx[j]) == atom_key(idx[i])) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    // Search arrangements: permutations within each group, minimal rendering
    // wins. Arrangement enumeration is deterministic and capped.
    rendering best;
    bool have_best = false;
    std::size_t budget = perm_cap;
    std::vector<std::size_t> arrangement(idx);

    // Recursively permute group g onward.
    auto consider = [&](const std::vector<std::size_t>& ord) {
        rendering r = render(body, ord, head);
        if (!have_best || r.text < best.text) {
            best = std::move(r);
            have_best = true;
        }
    };
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
        if (budget == 0) return;
        if (g == groups.size()) {
            --budget;
            consider(arrangement);
            return;
        }
        auto [b, e] = groups[g];
        std::vector<std::size_t> slice(arrangement.begin() + b,
                                       arrangement.begin() + e);
        std::sort(slice.begin(), slice.end());
        do {
            std::copy(slice.begin(), slice.end(), arrangement.begin() + b);
            rec(g + 1);
            if (budget == 0) return;
        } while (std::next_permutation(slice.begin(), slice.end()));
    };
    rec(0);
    if (!have_best) consider(arrangement);  // cap of zero: deterministic fallback

    canonical_pair out;
    out.key = best.text;
    out.renaming = best.renaming;
    auto rename_term = [&](const term& t) -> term {
        if (!t.is_var()) return t;
        return term::var(best.renaming.at(t.name));
    };
    auto rename_atom = [&](const atom& a) -> atom {
        atom r;
        r.predicate = a.predicate;
        r.args.reserve(a.args.size());
        for (const auto& t : a.args) r.args.push_back(rename_term(t));
        return r;
    };
    for (std::size_t i : best.order) out.body.push_back(rename_atom(body[i]));
    out.head = rename_atom(head);
    return out;
}

}  // namespace tgd
