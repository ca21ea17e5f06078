#pragma once

#include <string>

#include "scenium/ast.hpp"

namespace scenium {

// Parses a whole program.  Throws LexError / ParseError with exact positions.
Program parse_program(const std::string& source);

// Parses a single expression (used for formula strings and tests); the whole
// input must be consumed.
ExprPtr parse_expression(const std::string& source);

}  // namespace scenium
