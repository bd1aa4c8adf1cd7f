#include "tgd/report.hpp"

#include <cstdint>

namespace tgd {

namespace {

ordered_json atoms_json(const std::vector<atom>& atoms) {
    ordered_json arr = ordered_json::array();
    for (const auto& a : atoms) arr.push_back(to_string(a));
    return arr;
}

ordered_json string_set_json(const std::set<std::string>& s) {
    ordered_json arr = ordered_json::array();
    for (const auto& v : s) arr.push_back(v);
    return arr;
}

ordered_json token_set_json(const token_set& s) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : s) arr.push_back(to_string(t));
    return arr;
}

}  // namespace

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

ordered_json report_header(
    const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& inputs) {
    ordered_json h;
    h["tool"] = "tgdtool";
    h["version"] = tool_version;
    h["command"] = command;
    ordered_json ins = ordered_json::object();
    for (const auto& [name, text] : inputs) ins[name] = fnv1a64_hex(text);
    h["input_digests"] = ins;
    return h;
}

std::string status_name(tg_status s) {
    switch (s) {
        case tg_status::member: return "member";
        case tg_status::non_member: return "non-member";
        default: return "inconclusive";
    }
}

std::string status_name(ask_status s) {
    switch (s) {
        case ask_status::entailed: return "entailed";
        case ask_status::not_entailed: return "not-entailed";
        default: return "unknown";
    }
}

ordered_json to_json(const class_verdict& v) {
    ordered_json j;
    j["class"] = v.class_name;
    j["member"] = v.member;
    j["evidence"] = v.evidence;
    return j;
}

ordered_json to_json(const rtc_witness& w) {
    ordered_json j;
    j["pair"] = w.pair_id;
    j["a"] = to_string(w.a);
    j["b"] = to_string(w.b);
    j["c"] = to_string(w.c);
    j["x"] = w.x;
    j["z"] = w.z;
    j["a_prime"] = to_string(w.a_prime);
    j["theta"] = to_string(w.theta);
    if (w.via_second_pair) {
        j["via"] = "second-pair";
        j["second_pair"] = w.second_pair_id;
        j["b_prime"] = to_string(w.b_prime);
        j["eta"] = w.eta_rendered;
    } else {
        j["via"] = "head";
    }
    j["link_path"] = atoms_json(w.link_path);
    ordered_json links = ordered_json::array();
    for (const auto& s : w.path_links) links.push_back(string_set_json(s));
    j["path_links"] = links;
    j["failing_link_index"] = w.failing_link_index;
    j["failing_link_var"] = w.failing_link_var;
    j["m_var"] = string_set_json(w.m_var_set);
    if (w.guard)
        j["guard"] = to_string(*w.guard);
    else
        j["guard"] = nullptr;
    return j;
}

ordered_json to_json(const tg_verdict& v) {
    ordered_json j;
    j["class"] = "tg";
    j["status"] = status_name(v.status);
    j["member"] = v.status == tg_status::member;
    if (!v.reason.empty()) j["reason"] = v.reason;
    j["pairs_examined"] = v.pairs_examined;
    j["saturated"] = v.saturated;
    j["capped"] = v.capped;
    if (v.witness)
        j["witness"] = to_json(*v.witness);
    else
        j["witness"] = nullptr;
    return j;
}

ordered_json to_json(const extension_pair& ep) {
    ordered_json j;
    j["id"] = ep.id;
    j["body"] = atoms_json(ep.body);
    j["head"] = to_string(ep.head);
    j["key"] = ep.key;
    j["depth"] = ep.depth;
    if (ep.provenance.empty()) {
        ordered_json origin;
        origin["rule"] = ep.origin_rule;
        origin["head_index"] = ep.origin_head_index;
        j["origin"] = origin;
    } else {
        ordered_json steps = ordered_json::array();
        for (const auto& s : ep.provenance) {
            ordered_json sj;
            sj["base"] = s.base_id;
            sj["target"] = s.target_id;
            sj["unified_atom"] = s.unified_atom;
            sj["mgu"] = s.mgu_rendered;
            steps.push_back(sj);
        }
        j["provenance"] = steps;
    }
    return j;
}

ordered_json to_json(const pair_bounds& pb) {
    ordered_json j;
    j["base_pairs"] = pb.sigma0_size;
    j["predicates"] = pb.n_predicates;
    j["max_body"] = pb.max_body;
    j["max_arity"] = pb.max_arity;
    j["constants"] = pb.n_constants;
    j["d"] = pb.d.str();
    j["pair_bound"] = pb.body_bound.to_string();
    j["pair_bound_digits"] = pb.body_bound.digits;
    j["pair_bound_exact"] = pb.body_bound.exact;
    return j;
}

ordered_json extension_json(const extension_set& xs, const pair_bounds& pb) {
    ordered_json j;
    j["pair_count"] = xs.pairs.size();
    j["max_depth"] = xs.max_depth;
    j["saturated"] = xs.saturated;
    j["capped"] = xs.capped;
    j["bounds"] = to_json(pb);
    ordered_json arr = ordered_json::array();
    for (const auto& ep : xs.pairs) arr.push_back(to_json(ep));
    j["pairs"] = arr;
    return j;
}

ordered_json to_json(const firing_record& r) {
    ordered_json j;
    j["rule_index"] = r.rule_index;
    j["rule"] = r.rule_label;
    j["trigger"] = to_string(r.trigger);
    j["added"] = atoms_json(r.added);
    j["noop"] = r.noop;
    j["wave"] = r.wave;
    return j;
}

ordered_json instance_json(const labeled_instance& inst) {
    ordered_json j;
    j["chase_variant"] = chase_variant_name;
    j["depth"] = inst.depth;
    j["truncated"] = inst.truncated;
    j["exhausted"] = inst.exhausted;
    ordered_json atoms = ordered_json::array();
    for (std::size_t i = 0; i < inst.atoms.size(); ++i) {
        ordered_json aj;
        aj["atom"] = to_string(inst.atoms[i]);
        aj["level"] = inst.levels[i];
        atoms.push_back(aj);
    }
    j["atoms"] = atoms;
    ordered_json nl = ordered_json::object();
    for (const auto& [idx, lv] : inst.null_levels) nl["_n" + std::to_string(idx)] = lv;
    j["null_levels"] = nl;
    ordered_json prov = ordered_json::array();
    for (const auto& r : inst.provenance) prov.push_back(to_json(r));
    j["firings"] = prov;
    return j;
}

ordered_json to_json(const bcq_result& r) {
    ordered_json j;
    j["status"] = status_name(r.status);
    j["depth"] = r.depth;
    if (r.status == ask_status::entailed)
        j["witness"] = to_string(r.witness);
    else
        j["witness"] = nullptr;
    return j;
}

ordered_json nullsets_json(const null_analysis& na) {
    ordered_json j;
    ordered_json heads = ordered_json::array();
    for (const auto& [pos, toks] : na.table.head_entries) {
        ordered_json e;
        e["rule_index"] = pos.rule_index;
        e["atom_index"] = pos.atom_index;
        e["arg_index"] = pos.arg_index;
        e["tokens"] = token_set_json(toks);
        heads.push_back(e);
    }
    j["head_entries"] = heads;
    ordered_json pu = ordered_json::array();
    for (const auto& [key, toks] : na.table.position_union) {
        ordered_json e;
        e["predicate"] = key.first;
        e["arg_index"] = key.second;
        e["tokens"] = token_set_json(toks);
        pu.push_back(e);
    }
    j["position_union"] = pu;
    ordered_json nodes = ordered_json::array();
    for (const auto& n : na.graph.nodes) nodes.push_back(to_string(n));
    j["nodes"] = nodes;
    ordered_json edges = ordered_json::array();
    for (const auto& [from, to] : na.graph.edges) {
        ordered_json e = ordered_json::array();
        e.push_back(to_string(from));
        e.push_back(to_string(to));
        edges.push_back(e);
    }
    j["edges"] = edges;
    j["on_cycle"] = token_set_json(na.on_cycle);
    j["cyclic_closure"] = token_set_json(na.cyc_tokens);
    return j;
}

ordered_json probe_json(const probe_report& rep) {
    ordered_json j;
    ordered_json b;
    b["d"] = rep.bounds.d.str();
    b["m"] = rep.bounds.m.str();
    b["n"] = rep.bounds.big_n.to_string();
    b["n_digits"] = rep.bounds.big_n.digits;
    b["n_exact"] = rep.bounds.big_n.exact;
    b["n_prime"] = rep.bounds.nprime_rendered;
    b["n_prime_digits"] = rep.bounds.nprime_digits;
    b["n_prime_exact"] = rep.bounds.nprime_exact;
    j["bounds"] = b;
    j["n_small"] = rep.n_small;
    j["n_big"] = rep.n_big;
    j["extra_levels"] = rep.extra_levels;
    j["truncated"] = rep.truncated;
    ordered_json rn = ordered_json::array();
    for (auto n : rep.recent_nulls) rn.push_back("_n" + std::to_string(n));
    j["recent_nulls"] = rn;
    ordered_json on = ordered_json::array();
    for (auto n : rep.old_nulls) on.push_back("_n" + std::to_string(n));
    j["old_nulls"] = on;
    ordered_json pairs = ordered_json::array();
    for (const auto& pr : rep.pairs) {
        ordered_json e;
        e["recent"] = "_n" + std::to_string(pr.null_recent);
        e["old"] = "_n" + std::to_string(pr.null_old);
        e["interchangeable"] = pr.interchangeable;
        if (!pr.interchangeable) e["counterexample"] = pr.counterexample;
        pairs.push_back(e);
    }
    j["pairs"] = pairs;
    j["violations"] = rep.violations;
    return j;
}

}  // namespace tgd
