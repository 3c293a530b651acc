#include <doctest.h>

#include "pnpair/bounds_sieve.hpp"
#include "pnpair/errors.hpp"

using namespace pnpair;

TEST_CASE("plain condition is decided exactly") {
  const PlainCondition a = plain_condition_full(1, 4);
  CHECK(a.lhs_squared == 16);
  CHECK(a.rhs == 256);
  CHECK_FALSE(a.passes);

  // 65535 = 3 * 5 * 17 * 257, x^16 - 1 = (x + 1)^16.
  const PlainCondition b = plain_condition_full(1, 16);
  CHECK(b.rhs == 4096);
  CHECK_FALSE(b.passes);

  // Boundary: q^m equal to rhs^2 does not pass.
  const PlainCondition c = plain_condition(1, 4, 1, 1, 1, 1, 4);
  CHECK(c.rhs == 4);
  CHECK_FALSE(c.passes);
  CHECK(plain_condition(1, 5, 1, 1, 1, 1, 4).passes);
}

TEST_CASE("sieve parameters from their definition") {
  // theta = 1 - 2(1/5 + 1/7) - 2/q^2 with q = 4; S = (2*2 + 2*1 - 1)/theta + 2.
  const SieveParameters p = sieve_parameters(2, {5, 7}, {2});
  const mpq_class theta = mpq_class(1) - mpq_class(2) * (mpq_class(1, 5) + mpq_class(1, 7)) - mpq_class(1, 8);
  CHECK(p.theta == theta);
  CHECK(p.theta_positive);
  CHECK(p.S == mpq_class(5) / theta + 2);

  const SieveParameters none = sieve_parameters(1, {}, {});
  CHECK(none.theta == 1);
  CHECK(none.S == 1);

  CHECK_FALSE(sieve_parameters(1, {3, 5}, {1}).theta_positive);
}

TEST_CASE("sieve row (128, 4)") {
  const IntFactorization order = factor_qm_minus_1(7, 4);
  const XmStructure xs = xm_structure(7, 4);
  const SieveChoice c = make_sieve_choice(order, xs, "3", "x+1");
  CHECK(c.remaining_primes.size() == 5);
  CHECK(c.remaining_degrees.empty());
  const SieveEvaluation ev = sieve_eval(c, 7, 4);
  CHECK(ev.passes);
  CHECK(ev.S_approx == doctest::Approx(21.9523).epsilon(1e-5));
  CHECK(ev.rhs_approx == doctest::Approx(1404.95).epsilon(1e-5));
}

TEST_CASE("sieve choice validation") {
  const IntFactorization order = factor_qm_minus_1(1, 6);
  const XmStructure xs = xm_structure(1, 6);
  CHECK_THROWS_AS(make_sieve_choice(order, xs, "5", "1"), Error);
  CHECK_THROWS_AS(make_sieve_choice(order, xs, "3", "x^3+x+1"), Error);
  const SieveChoice all = make_sieve_choice(order, xs, "q^m-1", "x^m-1");
  CHECK(all.remaining_primes.empty());
  CHECK(all.remaining_degrees.empty());
}

TEST_CASE("automatic sieve for (32, 31)") {
  const IntFactorization order = factor_qm_minus_1(5, 31);
  const auto best = auto_sieve(order, xm_structure(5, 31));
  REQUIRE(best.has_value());
  CHECK(best->eval.passes);
  CHECK(best->eval.theta_positive);
}

TEST_CASE("closed-form constant equals the generic sieve") {
  for (unsigned k = 1; k <= 6; ++k) {
    const unsigned long q1 = (1ul << k) - 1;
    for (unsigned long a = 1; a <= q1; ++a) {
      if (q1 % a) continue;
      const auto closed = lemma53_S(k, a);
      if (!closed) continue;
      const SieveParameters g = lemma53_generic(k, a);
      REQUIRE(g.theta_positive);
      CHECK(g.S == *closed);
    }
  }
  CHECK_FALSE(lemma53_S(2, 1).has_value());
  CHECK(*lemma53_S(2, 3) == 4);
}

TEST_CASE("factors of low degree bound") {
  const Lemma56Report r = lemma56_bound(xm_structure(1, 31));
  CHECK(r.applicable);
  CHECK(r.u == 5);
  CHECK(r.m_prime == 31);
  CHECK(r.holds);
  // m' | q - 1: every factor is linear and the bound does not apply.
  CHECK_FALSE(lemma56_bound(xm_structure(2, 3)).applicable);
}
