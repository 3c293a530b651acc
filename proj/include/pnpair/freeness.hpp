#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pnpair/gf2_field.hpp"
#include "pnpair/poly.hpp"
#include "pnpair/poly_structure.hpp"

namespace pnpair {

// f(x) = (a x^2 + b x + c) / (d x + e).
struct RationalMap {
  Elem a = 0, b = 0, c = 0, d = 0, e = 0;

  bool operator==(const RationalMap&) const = default;
};

// a != 0 and (d, e) != (0, 0).
inline bool is_valid_quintuple(const RationalMap& f) { return f.a != 0 && (f.d != 0 || f.e != 0); }

// nullopt marks a pole (d u + e = 0).
std::optional<Elem> eval_map(const FieldCtx& ctx, const RationalMap& f, Elem u);

std::uint64_t mult_order(const FieldCtx& ctx, Elem u);
bool is_primitive(const FieldCtx& ctx, Elem u);
// e is given by its distinct primes, all dividing q^m - 1. Zero is e-free only
// for e = 1.
bool is_e_free(const FieldCtx& ctx, Elem u, const std::vector<std::uint64_t>& e_primes);
// gcd(x^m - 1, sum_i u^(q^i) x^(m-1-i)) = 1 over F_(q^m).
bool is_normal(const FieldCtx& ctx, Elem u);

// The F_q[x]-module structure of F_(q^m) under g o u = sum_i g_i u^(q^i).
class FqModule {
 public:
  explicit FqModule(const FieldCtx& ctx);

  const FieldCtx& ctx() const { return *ctx_; }
  const XmStructure& structure() const { return xs_; }
  const Gf2Field& small() const { return small_; }
  // Distinct monic irreducible factors of x^(m') - 1 over F_q.
  const std::vector<Poly>& factors() const { return factors_; }
  const SubfieldEmbedding& embedding() const { return emb_; }

  // g has coefficients in F_q (small-field encoding).
  Elem apply(const Poly& g, Elem u) const;
  // Exponent of each factor in Ord(u), each between 0 and 2^a.
  std::vector<unsigned> fq_order_exponents(Elem u) const;
  Poly fq_order(Elem u) const;
  Poly product(const std::vector<unsigned>& exponents) const;
  // For each selected factor h: ((x^m - 1) / h) o u != 0.
  bool is_g_free(Elem u, const std::vector<std::size_t>& g_factors) const;
  bool is_normal(Elem u) const;

 private:
  Elem apply_big(const Poly& g_big, Elem u) const;

  const FieldCtx* ctx_;
  XmStructure xs_;
  Gf2Field small_;
  std::vector<Poly> factors_;
  SubfieldEmbedding emb_;
  std::vector<Poly> cofactors_big_;  // (x^m - 1) / h_j mapped into F_(q^m)
};

// Divisors e | q^m - 1 and g | x^m - 1, reduced to their radicals.
struct FreenessSpec {
  std::vector<std::uint64_t> e_primes;
  std::vector<std::size_t> g_factors;

  static FreenessSpec full(const FqModule& mod);
  static FreenessSpec trivial() { return {}; }
};

// e given as a decimal integer dividing q^m - 1.
std::vector<std::uint64_t> e_primes_of_divisor(const FieldCtx& ctx, const mpz_class& e);
// g given as "1", "x^m-1", "full", "deg:d1,d2,..." or an F_2 polynomial; returns
// indices into FqModule::factors().
std::vector<std::size_t> g_factors_of_spec(const FqModule& mod, std::string_view spec);

struct CountMResult {
  std::uint64_t count = 0;
  std::uint64_t poles_skipped = 0;
};

// Number of non-pole u with u e1-free and g1-free and f(u) e2-free and g2-free.
CountMResult count_M(const FqModule& mod, const RationalMap& f, const FreenessSpec& s1, const FreenessSpec& s2,
                     unsigned threads = 0, std::uint64_t cap = std::uint64_t{1} << 24);

}  // namespace pnpair
