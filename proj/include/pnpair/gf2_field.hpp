#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "pnpair/arith_factor.hpp"

namespace pnpair {

// Field elements are residues modulo a binary polynomial of degree n <= 64,
// packed so that bit i is the coefficient of x^i.
using Elem = std::uint64_t;
using u128 = unsigned __int128;

constexpr unsigned kMaxFieldDegree = 64;

u128 clmul(std::uint64_t a, std::uint64_t b);

// Monic binary polynomial x^degree + low.
struct Gf2Modulus {
  unsigned degree = 0;
  std::uint64_t low = 0;

  bool operator==(const Gf2Modulus&) const = default;
};

std::string modulus_to_string(const Gf2Modulus& p);
Gf2Modulus parse_modulus(std::string_view text);

// Rabin's test: x^(2^n) = x mod p and gcd(x^(2^(n/r)) - x, p) = 1 for primes r | n.
bool is_irreducible(const Gf2Modulus& p);
Gf2Modulus smallest_irreducible(unsigned degree);

// Arithmetic in F_2[x]/(p). Multiplication is a carryless product followed by
// Barrett reduction; p need not be irreducible for mul/sqr to be well defined.
class Gf2Field {
 public:
  explicit Gf2Field(const Gf2Modulus& p);

  unsigned degree() const { return n_; }
  const Gf2Modulus& modulus() const { return mod_; }
  Elem mask() const { return mask_; }
  std::uint64_t size_minus_one() const { return mask_; }

  static Elem add(Elem a, Elem b) { return a ^ b; }
  Elem mul(Elem a, Elem b) const { return reduce(clmul(a, b)); }
  Elem sqr(Elem a) const { return reduce(clmul(a, a)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem pow(Elem a, const mpz_class& e) const;
  // Requires a != 0.
  Elem inv(Elem a) const;
  Elem reduce(u128 c) const;

  // x^(2^j) computed by repeated squaring.
  Elem frobenius(Elem a, unsigned times) const;

 private:
  Gf2Modulus mod_;
  unsigned n_;
  Elem mask_;
  Elem mu_low_;
};

std::string elem_to_hex(Elem e);
Elem elem_from_hex(std::string_view hex);

struct FieldOptions {
  FactorOptions factoring;
};

// F_{q^m} with q = 2^k, realized as F_2[x]/(p) with deg p = k*m.
// Immutable after construction.
class FieldCtx {
 public:
  static FieldCtx make(unsigned k, unsigned m, std::optional<Gf2Modulus> modulus_override = std::nullopt,
                       const FieldOptions& opts = {});

  unsigned k() const { return k_; }
  unsigned m() const { return m_; }
  unsigned n() const { return field_.degree(); }
  std::uint64_t q() const { return std::uint64_t{1} << k_; }
  // 2^n - 1, which is also the largest element encoding.
  std::uint64_t group_order() const { return field_.mask(); }
  const IntFactorization& group_order_factors() const { return order_factors_; }
  const Gf2Field& field() const { return field_; }
  const Gf2Modulus& modulus() const { return field_.modulus(); }

  bool contains(Elem u) const { return (u & ~field_.mask()) == 0; }
  Elem add(Elem a, Elem b) const { return a ^ b; }
  Elem mul(Elem a, Elem b) const { return field_.mul(a, b); }
  Elem pow(Elem a, const mpz_class& e) const;
  Elem pow(Elem a, std::uint64_t e) const { return field_.pow(a, e); }
  Elem inv(Elem a) const;
  Elem frobenius_q(Elem u) const { return field_.frobenius(u, k_); }

  // First element in ascending encoding order (skipping 0 and 1) of order q^m - 1.
  Elem find_primitive() const;

 private:
  FieldCtx(unsigned k, unsigned m, const Gf2Modulus& p, IntFactorization f)
      : k_(k), m_(m), field_(p), order_factors_(std::move(f)) {}

  unsigned k_;
  unsigned m_;
  Gf2Field field_;
  IntFactorization order_factors_;
};

}  // namespace pnpair
