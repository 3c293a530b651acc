#include <doctest.h>

#include <random>

#include "pnpair/poly.hpp"

using namespace pnpair;

namespace {

Poly product_of(const Gf2Field& f, const std::vector<Poly>& ps) {
  Poly r = Poly::constant(1);
  for (const Poly& p : ps) r = poly_mul(f, r, p);
  return r;
}

bool irreducible_by_roots_and_gcd(const Gf2Field& f, const Poly& p) {
  // A polynomial of degree d is irreducible over F_(2^n) iff it has no
  // factor of degree <= d/2, i.e. gcd(x^(Q^i) - x, p) = 1 for i <= d/2.
  const Poly x = Poly::monomial(1, 1);
  Poly xp = x;
  for (int i = 1; i <= p.degree() / 2; ++i) {
    xp = poly_frobenius_mod(f, xp, f.degree(), p);
    if (!poly_gcd(f, xp + x, p).is_one()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("division identity") {
  const Gf2Field f(smallest_irreducible(4));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<Elem> ac(1 + rng() % 12), bc(1 + rng() % 6);
    for (auto& c : ac) c = rng() & f.mask();
    for (auto& c : bc) c = rng() & f.mask();
    const Poly a(ac), b(bc);
    if (b.is_zero()) continue;
    Poly q, r;
    poly_divmod(f, a, b, q, r);
    CHECK(poly_mul(f, q, b) + r == a);
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("gcd divides both arguments") {
  const Gf2Field f(smallest_irreducible(3));
  const Poly a = poly_mul(f, Poly({1, 1}), Poly({3, 0, 1}));
  const Poly b = poly_mul(f, Poly({1, 1}), Poly({5, 1}));
  const Poly g = poly_gcd(f, a, b);
  CHECK(g == Poly({1, 1}));
  CHECK(poly_mod(f, a, g).is_zero());
}

TEST_CASE("x^m - 1 factors over small fields") {
  for (unsigned k = 1; k <= 4; ++k) {
    const Gf2Field f(smallest_irreducible(k));
    for (unsigned m = 1; m <= 35; m += 2) {
      const Poly xm = Poly::xn_minus_one(m);
      const auto factors = poly_factor_squarefree(f, xm);
      CHECK(product_of(f, factors) == xm);
      for (const Poly& p : factors) {
        CHECK(p.lead() == 1);
        CHECK(irreducible_by_roots_and_gcd(f, p));
      }
    }
  }
}

TEST_CASE("roots of a split polynomial") {
  const Gf2Field f(smallest_irreducible(5));
  const Poly p = poly_mul(f, poly_mul(f, Poly({3, 1}), Poly({7, 1})), Poly({20, 1}));
  CHECK(poly_roots(f, p) == std::vector<Elem>{3, 7, 20});
  CHECK(poly_eval(f, p, 7) == 0);
  CHECK(poly_eval(f, p, 8) != 0);
}

TEST_CASE("derivative in characteristic two") {
  CHECK(poly_derivative(Poly({1, 1, 1, 1})) == Poly({1, 0, 1}));
}

TEST_CASE("polynomial printing") {
  CHECK(poly_to_string(Poly({1, 1, 0, 1})) == "x^3+x+1");
  CHECK(poly_to_string(Poly({2, 1})) == "x+0x2");
}
