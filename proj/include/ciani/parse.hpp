#pragma once

#include <string>

#include "ciani/form.hpp"

namespace ciani {

// Parses a polynomial expression in x, y, z with rational coefficients.
//
// Grammar (whitespace ignored):
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := factor { ['*'|'/'] factor }     (juxtaposition multiplies;
//                                               '/' needs a constant divisor)
//   factor  := primary [ '^' digits ]
//   primary := digits [ '/' digits ] | 'x' | 'y' | 'z' | '(' expr ')'
//
// Syntax problems raise ParseError with the offending input position.
// A syntactically valid but inhomogeneous polynomial raises DomainError
// listing the distinct degrees present.
TernaryForm parse_form(const std::string& text);

}  // namespace ciani
