#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hpoly/polynomial.hpp"

namespace hpoly {

// Text format, one record per file:
//
//   # comments and blank lines are ignored
//   field = complex
//   m = 2
//   n = 2
//   2 0 : 1
//   1 1 : 0.5,-0.25
//   0 2 : -1
//
// Each coefficient line is the exponent vector, a colon, and the coefficient:
// a decimal for real polynomials, "re,im" for complex ones. Numbers are
// written in shortest round-trip form, so write/parse is bit-exact. At least
// one coefficient line is required and exponent vectors may not repeat.

std::string format_polynomial(const HomogeneousPolynomial& p);

/// Throws ParseError naming the offending line.
HomogeneousPolynomial parse_polynomial(std::string_view text);

HomogeneousPolynomial read_polynomial(const std::filesystem::path& path);
void write_polynomial(const std::filesystem::path& path, const HomogeneousPolynomial& p);

/// Shortest decimal that parses back to exactly x.
std::string format_exact(double x);
/// Fixed 17 significant digits.
std::string format_17g(double x);
double parse_double(std::string_view text);

}  // namespace hpoly
