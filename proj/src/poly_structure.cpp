#include "pnpair/poly_structure.hpp"

#include <algorithm>
#include <numeric>

#include "pnpair/errors.hpp"

namespace pnpair {

namespace {

// 2^k mod n without overflow for any k.
std::uint64_t pow2_mod(unsigned k, std::uint64_t n) {
  if (n == 1) return 0;
  std::uint64_t r = 1 % n;
  for (unsigned i = 0; i < k; ++i) r = (r * 2) % n;
  return r;
}

Poly f2_to_small(const std::vector<std::uint8_t>& g) {
  std::vector<Elem> c(g.begin(), g.end());
  return Poly(std::move(c));
}

}  // namespace

std::vector<unsigned> XmStructure::sorted_degrees() const {
  std::vector<unsigned> d = degrees;
  std::sort(d.begin(), d.end());
  return d;
}

XmStructure xm_structure(unsigned k, unsigned m) {
  if (k < 1 || m < 1) fail(Errc::InvalidArgument, "x^m-1 structure needs k >= 1 and m >= 1");
  if (m > (1u << 20)) fail(Errc::Unsupported, "m too large for coset enumeration");
  XmStructure s;
  s.k = k;
  s.m = m;
  s.m_prime = m;
  while (s.m_prime % 2 == 0) {
    s.m_prime /= 2;
    ++s.a;
  }
  s.multiplicity = 1u << s.a;
  const std::uint64_t mp = s.m_prime;
  const std::uint64_t qmod = pow2_mod(k, mp);
  std::vector<bool> seen(mp, false);
  for (std::uint64_t start = 0; start < mp; ++start) {
    if (seen[start]) continue;
    std::vector<unsigned> coset;
    std::uint64_t j = start;
    do {
      seen[j] = true;
      coset.push_back(static_cast<unsigned>(j));
      j = (j * qmod) % mp;
    } while (j != start);
    s.degrees.push_back(static_cast<unsigned>(coset.size()));
    s.cosets.push_back(std::move(coset));
  }
  // The coset of 1 has size ord_(m')(q).
  s.u = mp == 1 ? 1 : s.degrees[1];
  return s;
}

mpz_class omega_of_count(std::size_t count) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, count);
  return r;
}

mpz_class omega_xm(const XmStructure& s) { return omega_of_count(s.factor_count()); }

mpq_class sigma(const XmStructure& s) {
  const auto below = std::count_if(s.degrees.begin(), s.degrees.end(), [&](unsigned d) { return d < s.u; });
  mpq_class r(static_cast<unsigned long>(below), s.m);
  r.canonicalize();
  return r;
}

Gf2Field small_field(unsigned k) { return Gf2Field(smallest_irreducible(k)); }

std::vector<Poly> explicit_factors(const XmStructure& s) {
  if (s.k > 32) fail(Errc::Unsupported, "explicit factors need k <= 32");
  const Gf2Field fq = small_field(s.k);
  const std::vector<Poly> out = poly_factor_squarefree(fq, Poly::xn_minus_one(s.m_prime));
  std::vector<unsigned> got;
  for (const Poly& p : out) got.push_back(static_cast<unsigned>(p.degree()));
  std::sort(got.begin(), got.end());
  if (got != s.sorted_degrees()) fail(Errc::InvalidArgument, "explicit factor degrees disagree with cosets");
  return out;
}

mpz_class normal_element_count(const XmStructure& s) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2, s.k);
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), q.get_mpz_t(), s.m - s.m_prime);
  for (unsigned d : s.degrees) {
    mpz_class t;
    mpz_pow_ui(t.get_mpz_t(), q.get_mpz_t(), d);
    r *= t - 1;
  }
  return r;
}

std::vector<unsigned> fq_degrees_of_f2_divisor(const XmStructure& s, const std::vector<std::uint8_t>& g_f2) {
  const Gf2Field f2 = small_field(1);
  const Poly g = f2_to_small(g_f2);
  if (g.is_zero()) fail(Errc::InvalidArgument, "g must be nonzero");
  if (!poly_mod(f2, Poly::xn_minus_one(s.m), g).is_zero())
    fail(Errc::InvalidArgument, "g = " + poly_to_string(g) + " does not divide x^" + std::to_string(s.m) + "-1");
  const Poly rad = poly_gcd(f2, g, Poly::xn_minus_one(s.m_prime));
  std::vector<unsigned> out;
  for (const Poly& h : poly_factor_squarefree(f2, rad)) {
    const unsigned D = static_cast<unsigned>(h.degree());
    const unsigned split = std::gcd(D, s.k);
    for (unsigned i = 0; i < split; ++i) out.push_back(D / split);
  }
  std::sort(out.begin(), out.end());
  return out;
}

SubfieldEmbedding::SubfieldEmbedding(const Gf2Field& small, const Gf2Field& big) {
  const unsigned k = small.degree();
  if (big.degree() % k != 0) fail(Errc::InvalidArgument, "subfield degree does not divide field degree");
  if (k == 1) {
    basis_ = {1};
    return;
  }
  std::vector<Elem> pk(k + 1, 0);
  for (unsigned i = 0; i < k; ++i) pk[i] = (small.modulus().low >> i) & 1;
  pk[k] = 1;
  const std::vector<Elem> roots = poly_roots(big, Poly(std::move(pk)));
  if (roots.empty()) fail(Errc::InvalidArgument, "no root of the subfield modulus");
  const Elem beta = roots.front();
  basis_.push_back(1);
  for (unsigned i = 1; i < k; ++i) basis_.push_back(big.mul(basis_.back(), beta));
}

Elem SubfieldEmbedding::map(Elem small_elem) const {
  Elem r = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if ((small_elem >> i) & 1) r ^= basis_[i];
  return r;
}

Poly SubfieldEmbedding::map(const Poly& p) const {
  std::vector<Elem> c(p.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = map(p.c[i]);
  return Poly(std::move(c));
}

}  // namespace pnpair
