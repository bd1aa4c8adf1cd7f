#include "tgd/chase.hpp"

#include <algorithm>
#include <set>

#include "tgd/homomorphism.hpp"

namespace tgd {

namespace {

// Fired triggers are keyed by rule index plus the body-variable bindings.
std::string trigger_key(std::size_t rule_index, const rule& r, const substitution& h) {
    substitution restricted;
    for (const auto& v : variables_of(r.body))
        if (auto it = h.mapping.find(v); it != h.mapping.end())
            restricted.mapping.emplace(v, it->second);
    return std::to_string(rule_index) + "|" + to_string(restricted);
}

struct candidate {
    std::size_t rule_index;
    substitution match;
    std::string key;
    std::size_t level;
};

std::size_t image_level(const labeled_instance& inst, const rule& r, const substitution& h) {
    std::size_t lv = 0;
    for (const auto& a : r.body) lv = std::max(lv, inst.level_of(apply(a, h)));
    return lv;
}

std::vector<candidate> pending_candidates(const program& p, const labeled_instance& inst,
                                          const std::set<std::string>& fired) {
    std::vector<candidate> out;
    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
        const rule& r = p.rules[ri];
        for (const substitution& h : all_homomorphisms(r.body, inst.atoms)) {
            candidate c;
            c.rule_index = ri;
            c.key = trigger_key(ri, r, h);
            if (fired.count(c.key)) continue;
            c.level = image_level(inst, r, h);
            c.match = h;
            out.push_back(std::move(c));
        }
    }
    return out;
}

void add_atom(labeled_instance& inst, const atom& a, std::size_t level) {
    inst.index.emplace(a, inst.atoms.size());
    inst.atoms.push_back(a);
    inst.levels.push_back(level);
}

}  // namespace

labeled_instance chase_to_level(const program& p, const database& d, std::size_t depth,
                                const chase_limits& lim) {
    labeled_instance inst;
    inst.depth = depth;
    for (const auto& f : d.facts)
        if (!inst.contains(f)) add_atom(inst, f, 0);

    std::set<std::string> fired;
    for (std::size_t wave = 0; wave < depth && !inst.truncated; ++wave) {
        std::vector<candidate> cands = pending_candidates(p, inst, fired);
        if (cands.empty()) break;  // nothing pending at any level
        std::erase_if(cands, [&](const candidate& c) { return c.level != wave; });
        std::sort(cands.begin(), cands.end(), [](const candidate& a, const candidate& b) {
            if (a.rule_index != b.rule_index) return a.rule_index < b.rule_index;
            return a.key < b.key;
        });
        for (const candidate& c : cands) {
            const rule& r = p.rules[c.rule_index];
            firing_record rec;
            rec.rule_index = c.rule_index;
            rec.rule_label = r.label;
            rec.trigger = c.match;
            rec.wave = wave;
            for (const auto& ev : r.existential_vars) {
                std::size_t idx = inst.next_null++;
                rec.trigger.mapping.emplace(ev, term::null(idx));
                inst.null_levels.emplace(idx, wave + 1);
            }
            for (const auto& ha : r.head) {
                atom img = apply(ha, rec.trigger);
                if (inst.contains(img)) continue;
                add_atom(inst, img, wave + 1);
                rec.added.push_back(img);
                if (inst.atoms.size() >= lim.max_atoms) {
                    inst.truncated = true;
                    break;
                }
            }
            rec.noop = rec.added.empty();
            fired.insert(c.key);
            inst.provenance.push_back(std::move(rec));
            if (inst.truncated) break;
        }
    }
    if (!inst.truncated) inst.exhausted = pending_candidates(p, inst, fired).empty();
    return inst;
}

replay_result replay(const program& p, const database& d,
                     const std::vector<firing_record>& log, std::size_t depth) {
    replay_result out;
    labeled_instance& inst = out.instance;
    inst.depth = depth;
    for (const auto& f : d.facts)
        if (!inst.contains(f)) add_atom(inst, f, 0);

    auto fail = [&](const std::string& msg) {
        out.ok = false;
        if (out.error.empty()) out.error = msg;
    };

    std::size_t max_null = 0;
    for (const auto& rec : log) {
        if (rec.rule_index >= p.rules.size()) {
            fail("rule index out of range");
            break;
        }
        const rule& r = p.rules[rec.rule_index];
        if (r.label != rec.rule_label) fail("rule label mismatch");
        std::size_t lv = 0;
        bool missing = false;
        for (const auto& ba : r.body) {
            atom img = apply(ba, rec.trigger);
            if (!inst.contains(img)) {
                missing = true;
                break;
            }
            lv = std::max(lv, inst.level_of(img));
        }
        if (missing) {
            fail("body image not present at firing time");
            break;
        }
        if (lv != rec.wave) fail("recorded wave disagrees with body image level");
        std::vector<atom> added;
        for (const auto& ha : r.head) {
            atom img = apply(ha, rec.trigger);
            if (inst.contains(img)) continue;
            add_atom(inst, img, rec.wave + 1);
            added.push_back(img);
        }
        if (added != rec.added) fail("added atoms disagree with the log");
        for (const auto& [v, t] : rec.trigger.mapping) {
            if (!t.is_null()) continue;
            max_null = std::max<std::size_t>(max_null, t.null_index + 1);
            if (!inst.null_levels.count(t.null_index))
                inst.null_levels.emplace(t.null_index, rec.wave + 1);
        }
        inst.provenance.push_back(rec);
    }
    inst.next_null = std::max<std::size_t>(1, max_null);
    return out;
}

bcq_result ask_instance(const labeled_instance& inst, const query& q) {
    bcq_result res;
    res.depth = inst.depth;
    if (auto h = first_homomorphism(q.body, inst.atoms)) {
        res.status = ask_status::entailed;
        res.witness = *h;
        return res;
    }
    res.status = inst.exhausted ? ask_status::not_entailed : ask_status::unknown;
    return res;
}

bcq_result bcq_holds(const program& p, const database& d, const query& q,
                     std::size_t depth, const chase_limits& lim) {
    labeled_instance inst = chase_to_level(p, d, depth, lim);
    return ask_instance(inst, q);
}

}  // namespace tgd
