#include "tgd/parser.hpp"

#include <algorithm>
#include <cctype>

namespace tgd {
namespace {

enum class tok_kind {
    ident,       // bare identifier, case decides variable vs constant/predicate
    quoted,      // single-quoted constant
    lparen,
    rparen,
    comma,
    period,
    colon,
    arrow,       // ->
    query_mark,  // ?-
    end
};

struct token {
    tok_kind kind;
    std::string text;
    std::size_t line;
    std::size_t col;
};

class lexer {
public:
    explicit lexer(const std::string& text) : text_(text) {}

    token next() {
        skip_ws_and_comments();
        std::size_t line = line_, col = col_;
        if (pos_ >= text_.size()) return {tok_kind::end, "", line, col};
        char c = text_[pos_];
        if (c == '(') { advance(); return {tok_kind::lparen, "(", line, col}; }
        if (c == ')') { advance(); return {tok_kind::rparen, ")", line, col}; }
        if (c == ',') { advance(); return {tok_kind::comma, ",", line, col}; }
        if (c == '.') { advance(); return {tok_kind::period, ".", line, col}; }
        if (c == ':') { advance(); return {tok_kind::colon, ":", line, col}; }
        if (c == '-' && peek(1) == '>') {
            advance(); advance();
            return {tok_kind::arrow, "->", line, col};
        }
        if (c == '?' && peek(1) == '-') {
            advance(); advance();
            return {tok_kind::query_mark, "?-", line, col};
        }
        if (c == '\'') {
            advance();
            std::string s;
            while (pos_ < text_.size() && text_[pos_] != '\'') {
                if (text_[pos_] == '\n')
                    throw parse_error(line, col, "unterminated quoted constant");
                s += text_[pos_];
                advance();
            }
            if (pos_ >= text_.size())
                throw parse_error(line, col, "unterminated quoted constant");
            advance();  // closing quote
            if (s.empty())
                throw parse_error(line, col, "empty quoted constant");
            return {tok_kind::quoted, s, line, col};
        }
        if (c == '_')
            throw parse_error(line, col,
                              "identifiers may not start with '_' (reserved for null display)");
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string s;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                    text_[pos_] == '_')) {
                s += text_[pos_];
                advance();
            }
            return {tok_kind::ident, s, line, col};
        }
        throw parse_error(line, col, std::string("unexpected character '") + c + "'");
    }

private:
    char peek(std::size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    void advance() {
        if (pos_ < text_.size()) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class parser {
public:
    explicit parser(const std::string& text) : lex_(text) { shift(); }

    program parse_program() {
        program p;
        std::size_t auto_label = 0;
        while (cur_.kind != tok_kind::end) {
            p.rules.push_back(parse_rule(++auto_label));
        }
        try {
            p.validate();
        } catch (const program_error& e) {
            throw parse_error(1, 1, e.what());
        }
        return p;
    }

    database parse_database() {
        database d;
        std::set<atom> seen;
        while (cur_.kind != tok_kind::end) {
            token at = cur_;
            atom a = parse_atom();
            expect(tok_kind::period, "'.' after fact");
            if (!is_ground(a))
                throw parse_error(at.line, at.col, "facts must be ground");
            if (seen.insert(a).second) d.facts.push_back(a);
        }
        check_arities(d.facts, "fact file");
        return d;
    }

    query parse_query() {
        expect(tok_kind::query_mark, "'?-' at query start");
        query q;
        q.body.push_back(parse_atom());
        while (cur_.kind == tok_kind::comma) {
            shift();
            q.body.push_back(parse_atom());
        }
        expect(tok_kind::period, "'.' after query");
        if (cur_.kind != tok_kind::end)
            throw parse_error(cur_.line, cur_.col, "trailing input after query");
        check_arities(q.body, "query");
        return q;
    }

private:
    void shift() { cur_ = lex_.next(); }

    void expect(tok_kind k, const std::string& what) {
        if (cur_.kind != k)
            throw parse_error(cur_.line, cur_.col,
                              "expected " + what + ", found '" + cur_.text + "'");
        shift();
    }

    static bool uppercase_initial(const std::string& s) {
        return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
    }

    term parse_term() {
        if (cur_.kind == tok_kind::quoted) {
            term t = term::cons(cur_.text);
            shift();
            return t;
        }
        if (cur_.kind != tok_kind::ident)
            throw parse_error(cur_.line, cur_.col,
                              "expected a term, found '" + cur_.text + "'");
        if (cur_.text == "exists")
            throw parse_error(cur_.line, cur_.col, "'exists' is a reserved word");
        term t = uppercase_initial(cur_.text) ? term::var(cur_.text)
                                              : term::cons(cur_.text);
        shift();
        return t;
    }

    atom parse_atom() {
        if (cur_.kind != tok_kind::ident)
            throw parse_error(cur_.line, cur_.col,
                              "expected a predicate, found '" + cur_.text + "'");
        if (cur_.text == "exists")
            throw parse_error(cur_.line, cur_.col, "'exists' is a reserved word");
        if (uppercase_initial(cur_.text))
            throw parse_error(cur_.line, cur_.col,
                              "predicate names must start lowercase: '" + cur_.text + "'");
        atom a;
        a.predicate = cur_.text;
        shift();
        expect(tok_kind::lparen, "'('");
        if (cur_.kind != tok_kind::rparen) {
            a.args.push_back(parse_term());
            while (cur_.kind == tok_kind::comma) {
                shift();
                a.args.push_back(parse_term());
            }
        }
        expect(tok_kind::rparen, "')'");
        return a;
    }

    std::vector<atom> parse_atom_list() {
        std::vector<atom> atoms;
        atoms.push_back(parse_atom());
        while (cur_.kind == tok_kind::comma) {
            shift();
            atoms.push_back(parse_atom());
        }
        return atoms;
    }

    rule parse_rule(std::size_t auto_index) {
        rule r;
        token start = cur_;
        // Optional `label :` prefix: lowercase identifier followed by a colon
        // that is not itself the start of an atom.
        if (cur_.kind == tok_kind::ident && !uppercase_initial(cur_.text) &&
            cur_.text != "exists") {
            token save = cur_;
            shift();
            if (cur_.kind == tok_kind::colon) {
                r.label = save.text;
                shift();
            } else {
                // Not a label; re-parse the identifier as the first predicate.
                pending_ = cur_;
                cur_ = save;
                has_pending_ = true;
            }
        }
        if (r.label.empty()) r.label = "r" + std::to_string(auto_index);

        r.body = parse_atoms_with_pending();
        // Duplicate body atoms carry no information.
        std::vector<atom> dedup;
        for (auto& a : r.body)
            if (std::find(dedup.begin(), dedup.end(), a) == dedup.end())
                dedup.push_back(a);
        r.body = std::move(dedup);

        expect(tok_kind::arrow, "'->'");
        if (cur_.kind == tok_kind::ident && cur_.text == "exists") {
            shift();
            while (true) {
                if (cur_.kind != tok_kind::ident || !uppercase_initial(cur_.text))
                    throw parse_error(cur_.line, cur_.col,
                                      "expected an existential variable name");
                if (std::find(r.existential_vars.begin(), r.existential_vars.end(),
                              cur_.text) != r.existential_vars.end())
                    throw parse_error(cur_.line, cur_.col,
                                      "duplicate existential variable '" + cur_.text + "'");
                r.existential_vars.push_back(cur_.text);
                shift();
                if (cur_.kind == tok_kind::comma) {
                    shift();
                    continue;
                }
                break;
            }
            expect(tok_kind::colon, "':' after existential variables");
        }
        r.head = parse_atom_list();
        std::vector<atom> hdedup;
        for (auto& a : r.head)
            if (std::find(hdedup.begin(), hdedup.end(), a) == hdedup.end())
                hdedup.push_back(a);
        r.head = std::move(hdedup);
        expect(tok_kind::period, "'.' after rule");
        (void)start;
        return r;
    }

    // Handles the one-token lookahead stashed when a label guess failed.
    std::vector<atom> parse_atoms_with_pending() {
        if (has_pending_) {
            // cur_ holds the predicate identifier, pending_ the token after it.
            atom first = parse_atom_resumed();
            std::vector<atom> atoms{std::move(first)};
            while (cur_.kind == tok_kind::comma) {
                shift();
                atoms.push_back(parse_atom());
            }
            return atoms;
        }
        return parse_atom_list();
    }

    atom parse_atom_resumed() {
        if (uppercase_initial(cur_.text))
            throw parse_error(cur_.line, cur_.col,
                              "predicate names must start lowercase: '" + cur_.text + "'");
        atom a;
        a.predicate = cur_.text;
        cur_ = pending_;
        has_pending_ = false;
        expect(tok_kind::lparen, "'('");
        if (cur_.kind != tok_kind::rparen) {
            a.args.push_back(parse_term());
            while (cur_.kind == tok_kind::comma) {
                shift();
                a.args.push_back(parse_term());
            }
        }
        expect(tok_kind::rparen, "')'");
        return a;
    }

    void check_arities(const std::vector<atom>& atoms, const std::string& where) {
        std::map<std::string, std::size_t> seen;
        for (const auto& a : atoms) {
            auto it = seen.find(a.predicate);
            if (it == seen.end()) {
                seen.emplace(a.predicate, a.args.size());
            } else if (it->second != a.args.size()) {
                throw parse_error(1, 1, "arity mismatch for predicate '" +
                                            a.predicate + "' in " + where);
            }
        }
    }

    lexer lex_;
    token cur_{tok_kind::end, "", 0, 0};
    token pending_{tok_kind::end, "", 0, 0};
    bool has_pending_ = false;
};

}  // namespace

program parse_program(const std::string& text) {
    parser p(text);
    return p.parse_program();
}

database parse_database(const std::string& text) {
    parser p(text);
    return p.parse_database();
}

query parse_query(const std::string& text) {
    parser p(text);
    return p.parse_query();
}

}  // namespace tgd
