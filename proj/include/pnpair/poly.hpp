#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pnpair/gf2_field.hpp"

namespace pnpair {

// Dense univariate polynomial over a binary field, coefficients in ascending
// degree. The zero polynomial has no coefficients; otherwise the leading
// coefficient is nonzero.
struct Poly {
  std::vector<Elem> c;

  Poly() = default;
  explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly constant(Elem v) { return v ? Poly({v}) : Poly(); }
  static Poly monomial(Elem coeff, std::size_t degree);
  // x^n - 1
  static Poly xn_minus_one(std::size_t n) { return Poly::monomial(1, n) + Poly::constant(1); }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  Elem lead() const { return c.empty() ? 0 : c.back(); }
  Elem operator[](std::size_t i) const { return i < c.size() ? c[i] : 0; }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  friend Poly operator+(const Poly& a, const Poly& b);
  bool operator==(const Poly&) const = default;
};

Poly poly_mul(const Gf2Field& f, const Poly& a, const Poly& b);
Poly poly_scale(const Gf2Field& f, const Poly& a, Elem s);
// Quotient and remainder; b must be nonzero.
void poly_divmod(const Gf2Field& f, const Poly& a, const Poly& b, Poly& quot, Poly& rem);
Poly poly_mod(const Gf2Field& f, const Poly& a, const Poly& b);
Poly poly_div_exact(const Gf2Field& f, const Poly& a, const Poly& b);
Poly poly_monic(const Gf2Field& f, const Poly& a);
// Monic gcd; gcd(0, 0) is rejected.
Poly poly_gcd(const Gf2Field& f, const Poly& a, const Poly& b);
Poly poly_mulmod(const Gf2Field& f, const Poly& a, const Poly& b, const Poly& mod);
// a^(2^times) mod `mod`.
Poly poly_frobenius_mod(const Gf2Field& f, const Poly& a, std::uint64_t times, const Poly& mod);
Elem poly_eval(const Gf2Field& f, const Poly& a, Elem x);
Poly poly_derivative(const Poly& a);

// Distinct-degree factorization of a squarefree monic polynomial: pairs
// (d, product of all monic irreducible factors of degree d).
std::vector<std::pair<unsigned, Poly>> poly_ddf(const Gf2Field& f, const Poly& a);
// Splits a squarefree monic product of irreducibles of equal degree d.
std::vector<Poly> poly_edf(const Gf2Field& f, const Poly& a, unsigned d, std::mt19937_64& rng);
// Monic irreducible factors of a squarefree monic polynomial, sorted by
// (degree, coefficient encoding).
std::vector<Poly> poly_factor_squarefree(const Gf2Field& f, const Poly& a, std::uint64_t seed = 0x9e3779b97f4a7c15ULL);
// Distinct roots in the field, ascending.
std::vector<Elem> poly_roots(const Gf2Field& f, const Poly& a);

bool poly_less(const Poly& a, const Poly& b);
std::string poly_to_string(const Poly& a);

}  // namespace pnpair
