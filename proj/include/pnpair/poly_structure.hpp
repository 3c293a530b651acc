#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "pnpair/gf2_field.hpp"
#include "pnpair/poly.hpp"

namespace pnpair {

// Shape of x^m - 1 over F_q, q = 2^k: m = 2^a * m', and x^(m') - 1 is the
// product of one irreducible per q-cyclotomic coset of Z/m'Z.
struct XmStructure {
  unsigned k = 1;
  unsigned m = 1;
  unsigned a = 0;
  unsigned m_prime = 1;
  unsigned multiplicity = 1;  // 2^a
  unsigned u = 1;             // order of q modulo m'
  std::vector<std::vector<unsigned>> cosets;  // ordered by least element
  std::vector<unsigned> degrees;              // coset sizes, same order as cosets

  std::size_t factor_count() const { return degrees.size(); }
  std::vector<unsigned> sorted_degrees() const;
};

XmStructure xm_structure(unsigned k, unsigned m);

// 2^(number of distinct irreducible factors).
mpz_class omega_xm(const XmStructure& s);
// Omega of a polynomial with the given number of distinct irreducible factors.
mpz_class omega_of_count(std::size_t count);

// M/m where M counts distinct irreducible factors of degree below u.
mpq_class sigma(const XmStructure& s);

// F_q as F_2[y]/(p_k) with p_k the smallest irreducible of degree k.
Gf2Field small_field(unsigned k);

// Distinct monic irreducible factors of x^(m') - 1 over the small field,
// sorted by (degree, coefficients).
std::vector<Poly> explicit_factors(const XmStructure& s);

// Polynomial Euler function of x^m - 1 over F_q, which counts the normal
// elements of F_(q^m) over F_q.
mpz_class normal_element_count(const XmStructure& s);

// Degrees (over F_q) of the F_q-irreducible factors of x^(m') - 1 that divide
// the F_2 polynomial g. Throws when g does not divide x^m - 1 over F_2.
std::vector<unsigned> fq_degrees_of_f2_divisor(const XmStructure& s, const std::vector<std::uint8_t>& g_f2);

// Homomorphism from the small field F_q into a field of degree k*m: y maps to
// the least root of p_k.
class SubfieldEmbedding {
 public:
  SubfieldEmbedding(const Gf2Field& small, const Gf2Field& big);
  Elem map(Elem small_elem) const;
  Poly map(const Poly& p) const;
  Elem image_of_generator() const { return basis_.size() > 1 ? basis_[1] : 1; }

 private:
  std::vector<Elem> basis_;  // images of 1, y, y^2, ...
};

}  // namespace pnpair
