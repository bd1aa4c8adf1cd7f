#include "tgd/extension.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace tgd {

namespace {

using dec_float = boost::multiprecision::cpp_dec_float_50;

term rename_term(const term& t, const std::string& suffix) {
    return t.is_var() ? term::var(t.name + suffix) : t;
}

atom rename_atom(const atom& a, const std::string& suffix) {
    atom out;
    out.predicate = a.predicate;
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(rename_term(t, suffix));
    return out;
}

std::vector<atom> rename_atoms(const std::vector<atom>& as, const std::string& suffix) {
    std::vector<atom> out;
    out.reserve(as.size());
    for (const auto& a : as) out.push_back(rename_atom(a, suffix));
    return out;
}

}  // namespace

std::vector<extension_pair> sigma0(const program& p) {
    std::vector<extension_pair> out;
    std::set<std::string> seen;
    for (const auto& r : p.rules) {
        for (std::size_t hi = 0; hi < r.head.size(); ++hi) {
            canonical_pair cp = canonicalize(r.body, r.head[hi]);
            if (!seen.insert(cp.key).second) continue;
            extension_pair ep;
            ep.id = out.size();
            ep.body = cp.body;
            ep.head = cp.head;
            ep.key = cp.key;
            ep.depth = 0;
            ep.origin_rule = r.label;
            ep.origin_head_index = hi;
            out.push_back(std::move(ep));
        }
    }
    return out;
}

std::optional<unfold_result> extend_step(const extension_pair& base,
                                         const extension_pair& target,
                                         std::size_t target_body_index) {
    // Rename the two pairs apart so untouched variables cannot collide in the
    // union; canonicalization erases the markers afterwards.
    std::vector<atom> b1 = rename_atoms(base.body, "'");
    atom h1 = rename_atom(base.head, "'");
    std::vector<atom> b2 = rename_atoms(target.body, "''");
    atom h2 = rename_atom(target.head, "''");
    const atom& b = b2.at(target_body_index);

    auto u = mgu(h1, b);
    if (!u) return std::nullopt;
    const substitution& th1 = u->first;
    const substitution& th2 = u->second;

    std::set<atom> residual;
    atom removed = apply(b, th2);
    for (std::size_t i = 0; i < b2.size(); ++i) {
        atom img = apply(b2[i], th2);
        if (!(img == removed)) residual.insert(std::move(img));
    }
    std::set<atom> body_set(residual.begin(), residual.end());
    for (const auto& a : b1) body_set.insert(apply(a, th1));

    std::vector<atom> body(body_set.begin(), body_set.end());
    atom head = apply(h2, th2);
    canonical_pair cp = canonicalize(body, head);

    unfold_result res;
    res.body = cp.body;
    res.head = cp.head;
    res.key = cp.key;
    res.residual.assign(residual.begin(), residual.end());
    res.unified_atom = to_string(removed);
    res.mgu_rendered = "theta1=" + to_string(th1) + " theta2=" + to_string(th2);
    return res;
}

extension_set saturate(const program& p, const extension_limits& lim) {
    extension_set out;
    out.pairs = sigma0(p);
    std::map<std::string, std::size_t> by_key;
    for (const auto& ep : out.pairs) by_key[ep.key] = ep.id;

    std::size_t body_limit = lim.body_limit_mult * std::max<std::size_t>(p.max_body_size(), 1);
    std::deque<std::size_t> work;
    for (const auto& ep : out.pairs) work.push_back(ep.id);

    bool stopped = false;
    while (!work.empty() && !stopped) {
        std::size_t w = work.front();
        work.pop_front();
        std::size_t snapshot = out.pairs.size();
        for (std::size_t e = 0; e < snapshot && !stopped; ++e) {
            for (int role = 0; role < 2 && !stopped; ++role) {
                if (role == 1 && e == w) break;  // (w, w) already tried
                std::size_t base_id = role == 0 ? e : w;
                std::size_t target_id = role == 0 ? w : e;
                std::size_t nb = out.pairs[target_id].body.size();
                for (std::size_t bi = 0; bi < nb; ++bi) {
                    auto res = extend_step(out.pairs[base_id], out.pairs[target_id], bi);
                    if (!res) continue;
                    // Only results that consumed the whole target body are
                    // pairs in their own right; anything else is a fragment.
                    if (!res->residual.empty()) continue;
                    if (res->body.size() > body_limit) {
                        out.capped = true;
                        continue;
                    }
                    if (by_key.count(res->key)) continue;
                    if (out.pairs.size() >= lim.max_pairs) {
                        out.capped = true;
                        stopped = true;
                        break;
                    }
                    extension_pair ep;
                    ep.id = out.pairs.size();
                    ep.body = std::move(res->body);
                    ep.head = std::move(res->head);
                    ep.key = std::move(res->key);
                    ep.depth = std::max(out.pairs[base_id].depth, out.pairs[target_id].depth) + 1;
                    extension_step step;
                    step.base_id = base_id;
                    step.target_id = target_id;
                    step.unified_atom = std::move(res->unified_atom);
                    step.mgu_rendered = std::move(res->mgu_rendered);
                    ep.provenance.push_back(std::move(step));
                    by_key[ep.key] = ep.id;
                    work.push_back(ep.id);
                    out.pairs.push_back(std::move(ep));
                }
            }
        }
    }
    out.saturated = work.empty() && !out.capped;
    for (const auto& ep : out.pairs) out.max_depth = std::max(out.max_depth, ep.depth);
    return out;
}

big_int bell(std::size_t n) {
    // bell(n+1) = sum_k C(n,k) * bell(k), with binomials from Pascal's rule.
    std::vector<big_int> bells{1};
    std::vector<big_int> binom{1};  // row m of Pascal's triangle
    for (std::size_t m = 0; m < n; ++m) {
        big_int next = 0;
        for (std::size_t k = 0; k <= m; ++k) next += binom[k] * bells[k];
        bells.push_back(next);
        std::vector<big_int> row(m + 2, 1);
        for (std::size_t k = 1; k <= m; ++k) row[k] = binom[k - 1] + binom[k];
        binom = std::move(row);
    }
    return bells[n];
}

std::string power_digit_count(const big_int& base, const big_int& exponent) {
    if (base == 0 || base == 1 || exponent == 0) return "1";
    dec_float lg = boost::multiprecision::log10(dec_float(base));
    dec_float digits = boost::multiprecision::floor(dec_float(exponent) * lg) + 1;
    return big_int(digits).str();
}

std::string big_quantity::to_string() const {
    if (exact) return value.str();
    return base.str() + "^" + exponent.str();
}

big_quantity big_from_value(const big_int& v) {
    big_quantity q;
    q.exact = true;
    q.value = v;
    q.base = v;
    q.exponent = 1;
    q.digits = std::to_string(v.str().size() - (v < 0 ? 1 : 0));
    return q;
}

big_quantity big_power(const big_int& base, const big_int& exponent, std::size_t digit_cap) {
    if (exponent == 0 || base == 1) return big_from_value(1);
    if (base == 0) return big_from_value(0);
    dec_float est = dec_float(exponent) * boost::multiprecision::log10(dec_float(base)) + 1;
    if (est <= dec_float(digit_cap)) {
        big_int v = boost::multiprecision::pow(base, static_cast<unsigned>(exponent));
        big_quantity q = big_from_value(v);
        q.base = base;
        q.exponent = exponent;
        return q;
    }
    big_quantity q;
    q.exact = false;
    q.base = base;
    q.exponent = exponent;
    q.digits = power_digit_count(base, exponent);
    return q;
}

pair_bounds compute_pair_bounds(const program& p, std::size_t digit_cap) {
    pair_bounds pb;
    pb.sigma0_size = sigma0(p).size();
    std::set<std::string> preds;
    for (const auto& r : p.rules) {
        for (const auto& a : r.body) preds.insert(a.predicate);
        for (const auto& a : r.head) preds.insert(a.predicate);
    }
    pb.n_predicates = preds.size();
    pb.max_body = p.max_body_size();
    pb.max_arity = p.max_arity();
    pb.n_constants = p.constants().size();
    pb.d = big_int(pb.sigma0_size) * big_int(pb.n_predicates) *
           bell(pb.max_arity + pb.n_constants);
    pb.body_bound = big_power(big_int(pb.max_body), pb.d, digit_cap);
    return pb;
}

bool type_equivalent(const atom& a, const atom& b) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size()) return false;
    std::set<std::string> va = variables_of(a);
    std::set<std::string> vb = variables_of(b);
    std::map<std::string, term> fwd;
    std::map<std::string, term> bwd;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        const term& ta = a.args[i];
        const term& tb = b.args[i];
        if (!ta.is_var() || !tb.is_var()) {
            if (!(ta == tb)) return false;
            continue;
        }
        // A variable shared by both atoms must map to itself.
        if (vb.count(ta.name) && tb.name != ta.name) return false;
        if (va.count(tb.name) && ta.name != tb.name) return false;
        auto [it, fresh] = fwd.emplace(ta.name, tb);
        if (!fresh && !(it->second == tb)) return false;
        auto [jt, fresh2] = bwd.emplace(tb.name, ta);
        if (!fresh2 && !(jt->second == ta)) return false;
    }
    return true;
}

}  // namespace tgd
