#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pnpair/gf2_field.hpp"

namespace pnpair {

// Infix polynomial expressions such as "x^6+x^4+x^3+x+1", "(x+1)(x^2+x+1)" or
// "x^{29}-1". Integer literals are read modulo 2, '-' is the same as '+',
// juxtaposition and '*' both multiply, and exponents may be braced.

// Coefficients over F_2 in ascending degree, trailing zeros stripped; the zero
// polynomial is the empty vector. Throws InvalidArgument on syntax errors or
// when a name other than var appears.
std::vector<std::uint8_t> parse_f2_polynomial(std::string_view text, std::string_view var);

// An element of F_2[x]/(p) written either as "0x"-prefixed hex or as an
// expression in the class of x, spelled "a", "alpha", "α" or "x".
Elem parse_element(const Gf2Field& field, std::string_view text);

// Dense F_2 polynomial helpers used with parse_f2_polynomial.
std::vector<std::uint8_t> f2_poly_mul(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b);
std::string f2_poly_to_string(const std::vector<std::uint8_t>& coeffs);

}  // namespace pnpair
