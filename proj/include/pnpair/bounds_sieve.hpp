#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pnpair/arith_factor.hpp"
#include "pnpair/poly_structure.hpp"

namespace pnpair {

// q^m as an exact integer, q = 2^k.
mpz_class q_pow_m(unsigned k, unsigned m);

struct PlainCondition {
  mpz_class lhs_squared;  // q^m
  mpz_class rhs;          // constant * W1 * W2 * Omega1 * Omega2
  bool passes = false;    // q^m > rhs^2
  double lhs_approx = 0;  // q^(m/2)
  double rhs_approx = 0;
};

// q^(m/2) > constant * W(e1) W(e2) Omega(g1) Omega(g2), decided exactly.
PlainCondition plain_condition(unsigned k, unsigned m, const mpz_class& W1, const mpz_class& W2,
                               const mpz_class& Omega1, const mpz_class& Omega2, const mpz_class& constant = 4);
// The specialization e1 = e2 = q^m - 1, g1 = g2 = x^m - 1.
PlainCondition plain_condition_full(unsigned k, unsigned m, const FactorOptions& opts = {},
                                    const mpz_class& constant = 4);

// The divisor d of q^m - 1 and the divisor g of x^m - 1 used by the sieve,
// together with what is left over.
struct SieveChoice {
  mpz_class d;
  std::vector<mpz_class> d_primes;
  std::vector<mpz_class> remaining_primes;
  std::vector<unsigned> g_degrees;          // degrees over F_q of the factors of g
  std::vector<unsigned> remaining_degrees;  // factors of x^(m') - 1 not in g
};

struct SieveEvaluation {
  unsigned k = 0, m = 0;
  std::size_t n = 0;          // remaining primes
  std::size_t r = 0;          // remaining polynomial factors
  mpq_class theta;
  bool theta_positive = false;
  mpq_class S;                // meaningful only when theta_positive
  mpz_class W_d;
  mpz_class Omega_g;
  mpz_class lhs_squared;      // q^m
  mpq_class rhs;              // 4 W(d)^2 Omega(g)^2 S
  bool passes = false;        // theta > 0 and q^m > rhs^2
  double theta_approx = 0, S_approx = 0, lhs_approx = 0, rhs_approx = 0;
};

// theta = 1 - 2 sum 1/p_i - 2 sum q^(-deg), S = (2n + 2r - 1)/theta + 2.
struct SieveParameters {
  mpq_class theta;
  bool theta_positive = false;
  mpq_class S;
};
SieveParameters sieve_parameters(unsigned k, const std::vector<mpz_class>& remaining_primes,
                                 const std::vector<unsigned>& remaining_degrees);

// d is "q^m-1" or a decimal divisor; g is "1", "x^m-1", "full", "deg:d1,..."
// or an F_2 polynomial dividing x^m - 1.
SieveChoice make_sieve_choice(const IntFactorization& order, const XmStructure& xs, std::string_view d_spec,
                              std::string_view g_spec);
std::vector<unsigned> g_degrees_of_spec(const XmStructure& xs, std::string_view g_spec);

SieveEvaluation sieve_eval(const SieveChoice& choice, unsigned k, unsigned m);

// Searches d = product of the j smallest primes of q^m - 1 and g = all factors
// except the r of largest degree; returns the passing choice with the smallest
// bound, or nullopt.
struct AutoSieveResult {
  SieveChoice choice;
  SieveEvaluation eval;
  std::size_t tried = 0;
};
std::optional<AutoSieveResult> auto_sieve(const IntFactorization& order, const XmStructure& xs);

// (2q^2 - 6q + aq + 4) / (aq - 2q + 2); nullopt when the denominator is not positive.
std::optional<mpq_class> lemma53_S(unsigned k, const mpz_class& a);
// The same quantity from the generic sieve: n = 0, g = 1, remaining factors
// the (q-1)/a linear factors of x^(m') - 1.
SieveParameters lemma53_generic(unsigned k, const mpz_class& a);

struct Lemma56Report {
  bool applicable = false;  // m' does not divide q - 1
  unsigned m_prime = 0;
  unsigned u = 0;
  SieveParameters params;
  bool holds = false;  // S <= m'
};
// g = product of the factors of degree below u, n = 0.
Lemma56Report lemma56_bound(const XmStructure& xs);

}  // namespace pnpair
