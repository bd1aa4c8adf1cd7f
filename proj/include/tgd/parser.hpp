#pragma once

#include <stdexcept>
#include <string>

#include "tgd/syntax.hpp"

namespace tgd {

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, std::size_t col, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}

    std::size_t line;
    std::size_t col;
};

// Rule text: one rule per statement, `[label:] atoms -> [exists V1,...:] atoms .`
// Variables start uppercase, constants are lowercase identifiers or
// single-quoted, predicates are lowercase. `%` starts a line comment.
// Unlabeled rules receive labels r1, r2, ... by position. Duplicate body
// atoms are dropped. The returned program is validated.
program parse_program(const std::string& text);

// Fact text: `pred(c1,...,cn).` lines; ground atoms only.
database parse_database(const std::string& text);

// Query text: `?- atom, ..., atom .`
query parse_query(const std::string& text);

}  // namespace tgd
