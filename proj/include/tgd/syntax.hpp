#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgd {

// The three term kinds are disjoint: a variable and a constant never compare
// equal even when their names coincide textually (names are drawn from
// disjoint lexical spaces by the parser anyway).
enum class term_kind : std::uint8_t { variable, constant, null };

struct term {
    term_kind kind = term_kind::variable;
    std::string name;          // variable or constant name
    std::uint64_t null_index = 0;  // positive, meaningful only for nulls

    static term var(std::string n) { return {term_kind::variable, std::move(n), 0}; }
    static term cons(std::string n) { return {term_kind::constant, std::move(n), 0}; }
    static term null(std::uint64_t i) { return {term_kind::null, {}, i}; }

    bool is_var() const { return kind == term_kind::variable; }
    bool is_const() const { return kind == term_kind::constant; }
    bool is_null() const { return kind == term_kind::null; }

    friend auto operator<=>(const term&, const term&) = default;
    friend bool operator==(const term&, const term&) = default;
};

// Display form: variables and constants print their name, nulls print _n<i>.
std::string to_string(const term& t);

struct atom {
    std::string predicate;
    std::vector<term> args;

    std::size_t arity() const { return args.size(); }

    friend auto operator<=>(const atom&, const atom&) = default;
    friend bool operator==(const atom&, const atom&) = default;
};

std::string to_string(const atom& a);
std::string to_string(const std::vector<atom>& atoms);

std::set<std::string> variables_of(const atom& a);
std::set<std::string> variables_of(const std::vector<atom>& atoms);
std::set<std::string> constants_of(const atom& a);
std::set<std::string> constants_of(const std::vector<atom>& atoms);
bool is_ground(const atom& a);

struct rule {
    std::string label;
    std::vector<atom> body;   // nonempty, duplicates removed, input order kept
    std::vector<atom> head;   // nonempty, input order kept
    std::vector<std::string> existential_vars;  // declaration order

    bool is_existential(const std::string& v) const;
    // Body variables; by construction every non-existential head variable is
    // among them.
    std::set<std::string> universal_vars() const;
    std::set<std::string> frontier_vars() const;  // body vars occurring in head
};

std::string to_string(const rule& r);

class program_error : public std::runtime_error {
public:
    explicit program_error(const std::string& what) : std::runtime_error(what) {}
};

struct program {
    std::vector<rule> rules;
    std::map<std::string, std::size_t> schema;  // predicate -> arity

    // Enforces: unique labels, arity consistency, nonempty body/head,
    // existential vars subset of head vars and disjoint from body vars,
    // non-existential head vars covered by the body, no nulls anywhere.
    // Throws program_error on violation. Populates schema.
    void validate();

    std::size_t max_body_size() const;  // 0 for empty program
    std::size_t max_arity() const;
    std::set<std::string> constants() const;
};

std::string to_string(const program& p);

struct database {
    std::vector<atom> facts;  // ground, no nulls, input order kept, deduped
};

std::string to_string(const database& d);

struct query {
    std::vector<atom> body;  // nonempty, no nulls, input order kept
};

std::string to_string(const query& q);

}  // namespace tgd
