#include "tgd/syntax.hpp"

#include <algorithm>
#include <sstream>

namespace tgd {

std::string to_string(const term& t) {
    switch (t.kind) {
        case term_kind::variable:
        case term_kind::constant:
            return t.name;
        case term_kind::null:
            return "_n" + std::to_string(t.null_index);
    }
    return "?";
}

std::string to_string(const atom& a) {
    std::string out = a.predicate;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += to_string(a.args[i]);
    }
    out += ')';
    return out;
}

std::string to_string(const std::vector<atom>& atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += ", ";
        out += to_string(atoms[i]);
    }
    return out;
}

std::set<std::string> variables_of(const atom& a) {
    std::set<std::string> vs;
    for (const auto& t : a.args)
        if (t.is_var()) vs.insert(t.name);
    return vs;
}

std::set<std::string> variables_of(const std::vector<atom>& atoms) {
    std::set<std::string> vs;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_var()) vs.insert(t.name);
    return vs;
}

std::set<std::string> constants_of(const atom& a) {
    std::set<std::string> cs;
    for (const auto& t : a.args)
        if (t.is_const()) cs.insert(t.name);
    return cs;
}

std::set<std::string> constants_of(const std::vector<atom>& atoms) {
    std::set<std::string> cs;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_const()) cs.insert(t.name);
    return cs;
}

bool is_ground(const atom& a) {
    return std::none_of(a.args.begin(), a.args.end(),
                        [](const term& t) { return t.is_var(); });
}

bool rule::is_existential(const std::string& v) const {
    return std::find(existential_vars.begin(), existential_vars.end(), v) !=
           existential_vars.end();
}

std::set<std::string> rule::universal_vars() const {
    return variables_of(body);
}

std::set<std::string> rule::frontier_vars() const {
    std::set<std::string> body_vars = variables_of(body);
    std::set<std::string> head_vars = variables_of(head);
    std::set<std::string> out;
    for (const auto& v : body_vars)
        if (head_vars.count(v)) out.insert(v);
    return out;
}

std::string to_string(const rule& r) {
    std::string out = r.label;
    out += ": ";
    out += to_string(r.body);
    out += " -> ";
    if (!r.existential_vars.empty()) {
        out += "exists ";
        for (std::size_t i = 0; i < r.existential_vars.size(); ++i) {
            if (i) out += ',';
            out += r.existential_vars[i];
        }
        out += ": ";
    }
    out += to_string(r.head);
    out += '.';
    return out;
}

void program::validate() {
    schema.clear();
    std::set<std::string> labels;
    auto check_arity = [&](const atom& a, const std::string& where) {
        auto it = schema.find(a.predicate);
        if (it == schema.end()) {
            schema.emplace(a.predicate, a.args.size());
        } else if (it->second != a.args.size()) {
            throw program_error("arity mismatch for predicate '" + a.predicate +
                                "' in " + where + ": " +
                                std::to_string(a.args.size()) + " vs " +
                                std::to_string(it->second));
        }
    };
    for (const auto& r : rules) {
        if (!labels.insert(r.label).second)
            throw program_error("duplicate rule label '" + r.label + "'");
        if (r.body.empty())
            throw program_error("rule '" + r.label + "' has an empty body");
        if (r.head.empty())
            throw program_error("rule '" + r.label + "' has an empty head");
        std::set<std::string> body_vars = variables_of(r.body);
        std::set<std::string> head_vars = variables_of(r.head);
        for (const auto& v : r.existential_vars) {
            if (!head_vars.count(v))
                throw program_error("rule '" + r.label + "': existential variable '" +
                                    v + "' does not occur in the head");
            if (body_vars.count(v))
                throw program_error("rule '" + r.label + "': existential variable '" +
                                    v + "' also occurs in the body");
        }
        for (const auto& v : head_vars) {
            if (!r.is_existential(v) && !body_vars.count(v))
                throw program_error("rule '" + r.label + "': head variable '" + v +
                                    "' neither existential nor bound by the body");
        }
        for (const auto& a : r.body) {
            check_arity(a, "rule '" + r.label + "'");
            for (const auto& t : a.args)
                if (t.is_null())
                    throw program_error("rule '" + r.label + "' mentions a null");
        }
        for (const auto& a : r.head) {
            check_arity(a, "rule '" + r.label + "'");
            for (const auto& t : a.args)
                if (t.is_null())
                    throw program_error("rule '" + r.label + "' mentions a null");
        }
    }
}

std::size_t program::max_body_size() const {
    std::size_t m = 0;
    for (const auto& r : rules) m = std::max(m, r.body.size());
    return m;
}

std::size_t program::max_arity() const {
    std::size_t m = 0;
    for (const auto& [pred, ar] : schema) m = std::max(m, ar);
    return m;
}

std::set<std::string> program::constants() const {
    std::set<std::string> cs;
    for (const auto& r : rules) {
        for (const auto& a : r.body)
            for (const auto& t : a.args)
                if (t.is_const()) cs.insert(t.name);
        for (const auto& a : r.head)
            for (const auto& t : a.args)
                if (t.is_const()) cs.insert(t.name);
    }
    return cs;
}

std::string to_string(const program& p) {
    std::string out;
    for (const auto& r : p.rules) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

std::string to_string(const database& d) {
    std::string out;
    for (const auto& f : d.facts) {
        out += to_string(f);
        out += ".\n";
    }
    return out;
}

std::string to_string(const query& q) {
    std::string out = "?- ";
    out += to_string(q.body);
    out += '.';
    return out;
}

}  // namespace tgd
