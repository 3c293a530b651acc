#include "pnpair/poly.hpp"

#include <algorithm>

#include "pnpair/errors.hpp"

namespace pnpair {

Poly Poly::monomial(Elem coeff, std::size_t degree) {
  if (coeff == 0) return {};
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = coeff;
  return Poly(std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  const Poly& big = a.c.size() >= b.c.size() ? a : b;
  const Poly& small = a.c.size() >= b.c.size() ? b : a;
  std::vector<Elem> r = big.c;
  for (std::size_t i = 0; i < small.c.size(); ++i) r[i] ^= small.c[i];
  return Poly(std::move(r));
}

Poly poly_mul(const Gf2Field& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Elem> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] ^= f.mul(a.c[i], b.c[j]);
  }
  return Poly(std::move(r));
}

Poly poly_scale(const Gf2Field& f, const Poly& a, Elem s) {
  std::vector<Elem> r(a.c.size());
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] = f.mul(a.c[i], s);
  return Poly(std::move(r));
}

void poly_divmod(const Gf2Field& f, const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.is_zero()) fail(Errc::InvalidArgument, "polynomial division by zero");
  std::vector<Elem> r = a.c;
  const int db = b.degree();
  const Elem inv_lead = f.inv(b.lead());
  std::vector<Elem> q;
  if (a.degree() >= db) q.assign(static_cast<std::size_t>(a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    const Elem coef = r[static_cast<std::size_t>(i)];
    if (coef == 0) continue;
    const Elem t = f.mul(coef, inv_lead);
    q[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] ^= f.mul(t, b.c[static_cast<std::size_t>(j)]);
  }
  quot = Poly(std::move(q));
  rem = Poly(std::move(r));
}

Poly poly_mod(const Gf2Field& f, const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(f, a, b, q, r);
  return r;
}

Poly poly_div_exact(const Gf2Field& f, const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(f, a, b, q, r);
  if (!r.is_zero()) fail(Errc::InvalidArgument, "polynomial division is not exact");
  return q;
}

Poly poly_monic(const Gf2Field& f, const Poly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  return poly_scale(f, a, f.inv(a.lead()));
}

Poly poly_gcd(const Gf2Field& f, const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) fail(Errc::InvalidArgument, "gcd(0, 0) is undefined");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = poly_mod(f, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return poly_monic(f, x);
}

Poly poly_mulmod(const Gf2Field& f, const Poly& a, const Poly& b, const Poly& mod) {
  return poly_mod(f, poly_mul(f, a, b), mod);
}

Poly poly_frobenius_mod(const Gf2Field& f, const Poly& a, std::uint64_t times, const Poly& mod) {
  Poly r = poly_mod(f, a, mod);
  for (std::uint64_t t = 0; t < times; ++t) {
    // Squaring is additive in characteristic 2: (sum c_i x^i)^2 = sum c_i^2 x^(2i).
    std::vector<Elem> s(r.c.empty() ? 0 : 2 * r.c.size() - 1, 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) s[2 * i] = f.sqr(r.c[i]);
    r = poly_mod(f, Poly(std::move(s)), mod);
  }
  return r;
}

Elem poly_eval(const Gf2Field& f, const Poly& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) acc = f.mul(acc, x) ^ a.c[i];
  return acc;
}

Poly poly_derivative(const Poly& a) {
  if (a.c.size() <= 1) return {};
  std::vector<Elem> r(a.c.size() - 1, 0);
  for (std::size_t i = 1; i < a.c.size(); i += 2) r[i - 1] = a.c[i];
  return Poly(std::move(r));
}

std::vector<std::pair<unsigned, Poly>> poly_ddf(const Gf2Field& f, const Poly& a) {
  std::vector<std::pair<unsigned, Poly>> out;
  Poly rest = poly_monic(f, a);
  const Poly x = Poly::monomial(1, 1);
  Poly h = poly_mod(f, x, rest.degree() > 0 ? rest : Poly::constant(1));
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(std::max(rest.degree(), 0)); ++d) {
    h = poly_frobenius_mod(f, h, f.degree(), rest);
    const Poly g = poly_gcd(f, rest, h + x);
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      rest = poly_div_exact(f, rest, g);
      h = poly_mod(f, h, rest);
    }
  }
  if (rest.degree() > 0) out.emplace_back(static_cast<unsigned>(rest.degree()), rest);
  return out;
}

std::vector<Poly> poly_edf(const Gf2Field& f, const Poly& a, unsigned d, std::mt19937_64& rng) {
  const int n = a.degree();
  if (n <= 0) return {};
  if (n % static_cast<int>(d) != 0) fail(Errc::InvalidArgument, "equal-degree split: degree mismatch");
  if (n == static_cast<int>(d)) return {poly_monic(f, a)};
  const std::uint64_t trace_len = static_cast<std::uint64_t>(f.degree()) * d;
  for (;;) {
    std::vector<Elem> coeffs(static_cast<std::size_t>(n));
    for (Elem& c : coeffs) c = rng() & f.mask();
    const Poly r(std::move(coeffs));
    if (r.degree() < 1) continue;
    // Absolute trace r + r^2 + ... + r^(2^(Kd-1)) mod a.
    Poly t = r;
    Poly s = r;
    for (std::uint64_t i = 1; i < trace_len; ++i) {
      s = poly_frobenius_mod(f, s, 1, a);
      t = t + s;
    }
    const Poly g = poly_gcd(f, a, t);
    if (g.degree() > 0 && g.degree() < n) {
      auto left = poly_edf(f, g, d, rng);
      auto right = poly_edf(f, poly_div_exact(f, a, g), d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.c.size() != b.c.size()) return a.c.size() < b.c.size();
  return std::lexicographical_compare(a.c.rbegin(), a.c.rend(), b.c.rbegin(), b.c.rend());
}

std::vector<Poly> poly_factor_squarefree(const Gf2Field& f, const Poly& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Poly> out;
  for (const auto& [d, prod] : poly_ddf(f, a)) {
    auto parts = poly_edf(f, prod, d, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

std::vector<Elem> poly_roots(const Gf2Field& f, const Poly& a) {
  if (a.is_zero()) fail(Errc::InvalidArgument, "roots of the zero polynomial");
  std::vector<Elem> roots;
  if (a.degree() == 0) return roots;
  const Poly monic = poly_monic(f, a);
  const Poly x = Poly::monomial(1, 1);
  const Poly xq = poly_frobenius_mod(f, x, f.degree(), monic);
  const Poly split = poly_gcd(f, monic, xq + x);
  std::mt19937_64 rng(0x5eed);
  for (const Poly& lin : poly_edf(f, split, 1, rng)) roots.push_back(lin.c[0]);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string poly_to_string(const Poly& a) {
  std::string out;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    const Elem c = a.c[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    std::string mono = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
    if (c == 1)
      out += mono.empty() ? "1" : mono;
    else
      out += elem_to_hex(c) + (mono.empty() ? "" : "*" + mono);
  }
  return out.empty() ? "0" : out;
}

}  // namespace pnpair
