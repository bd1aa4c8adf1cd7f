#include "tgd/markup.hpp"

#include <stdexcept>

namespace tgd {

markup_state markup_fixpoint(const atom& a, const atom& c, const atom& a_prime) {
    if (a.predicate != a_prime.predicate || a.args.size() != a_prime.args.size())
        throw std::invalid_argument("markup requires a and a_prime over one predicate");

    markup_state st;
    std::set<std::string> vars_a = variables_of(a);
    std::set<std::string> vars_c = variables_of(c);
    std::set<std::string> vars_ap = variables_of(a_prime);

    for (const auto& v : vars_a)
        if (!vars_c.count(v)) st.marked_vars_a.insert(v);
    for (const auto& v : vars_c)
        if (!vars_ap.count(v)) st.marked_vars_c.insert(v);

    bool changed = true;
    while (changed) {
        changed = false;
        ++st.rounds;
        // Variables fully marked in c propagate into a.
        for (const auto& v : vars_c) {
            if (!st.marked_vars_c.count(v)) continue;
            if (vars_a.count(v) && !st.marked_vars_a.count(v)) {
                st.marked_vars_a.insert(v);
                changed = true;
            }
        }
        // A variable of a_prime whose positions, read inside a, hold only
        // marked variables (and at least one) propagates into c.
        for (const auto& v : vars_ap) {
            if (!vars_c.count(v) || st.marked_vars_c.count(v)) continue;
            bool saw_var = false, all_marked = true;
            for (std::size_t i = 0; i < a_prime.args.size(); ++i) {
                const term& t = a_prime.args[i];
                if (!t.is_var() || t.name != v) continue;
                const term& inside_a = a.args[i];
                if (inside_a.is_var()) {
                    saw_var = true;
                    if (!st.marked_vars_a.count(inside_a.name)) {
                        all_marked = false;
                        break;
                    }
                }
            }
            if (saw_var && all_marked) {
                st.marked_vars_c.insert(v);
                changed = true;
            }
        }
    }

    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (a.args[i].is_var() && st.marked_vars_a.count(a.args[i].name))
            st.marked_in_a.insert(i);
    for (std::size_t i = 0; i < c.args.size(); ++i)
        if (c.args[i].is_var() && st.marked_vars_c.count(c.args[i].name))
            st.marked_in_c.insert(i);
    return st;
}

std::set<std::string> m_var(const atom& a, const atom& c, const atom& a_prime) {
    return markup_fixpoint(a, c, a_prime).marked_vars_a;
}

}  // namespace tgd
