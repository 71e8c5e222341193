#pragma once

#include "resbound/vector_field.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace resbound {

/// Syntax or semantic error in a text input, with a 1-based position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string &message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses the vector-field format:
///
///     vars x,y;
///     dx = y
///     dy = 3/2*x^2 - (1/2 + 2 i)*y
///
/// Statements end at ';' or a newline, '#' starts a comment. Literals are
/// integers, p/q, and Gaussian rationals written with the unit `i` (only
/// when `i` is not a declared variable).
VectorField parse_vector_field(std::string_view text);

/// Parses a single polynomial expression over the given variable names.
Poly parse_polynomial(std::string_view text, std::span<const std::string> names);

/// Parses a constant expression such as "3/4" or "(1 + 2 i)".
GaussRat parse_constant(std::string_view text);

} // namespace resbound
