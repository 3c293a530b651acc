#include "pnpair/gf2_field.hpp"

#include <bit>
#include <cstdio>

#include <immintrin.h>

#include "pnpair/errors.hpp"
#include "pnpair/expr_parser.hpp"

namespace pnpair {

namespace {

u128 clmul_soft(std::uint64_t a, std::uint64_t b) {
  u128 table[16];
  table[0] = 0;
  table[1] = a;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1;
    table[i + 1] = table[i] ^ a;
  }
  u128 r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    r = (r << 4) ^ table[(b >> shift) & 15];
  }
  return r;
}

__attribute__((target("pclmul,sse4.1"))) u128 clmul_hw(std::uint64_t a, std::uint64_t b) {
  const __m128i va = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i vb = _mm_cvtsi64_si128(static_cast<long long>(b));
  const __m128i p = _mm_clmulepi64_si128(va, vb, 0x00);
  const std::uint64_t lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  const std::uint64_t hi = static_cast<std::uint64_t>(_mm_extract_epi64(p, 1));
  return (u128{hi} << 64) | lo;
}

const bool kHasPclmul = [] {
  __builtin_cpu_init();
  return __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
}();

int degree128(u128 v) {
  if (v == 0) return -1;
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi) return 127 - std::countl_zero(hi);
  return 63 - std::countl_zero(static_cast<std::uint64_t>(v));
}

// Remainder of a (any degree < 128) modulo the full binary polynomial p.
u128 polymod128(u128 a, u128 p) {
  const int dp = degree128(p);
  for (int d = degree128(a); d >= dp; d = degree128(a)) a ^= p << (d - dp);
  return a;
}

u128 polygcd128(u128 a, u128 b) {
  while (b != 0) {
    a = polymod128(a, b);
    std::swap(a, b);
  }
  return a;
}

u128 full_modulus(const Gf2Modulus& p) { return (u128{1} << p.degree) | p.low; }

}  // namespace

u128 clmul(std::uint64_t a, std::uint64_t b) { return kHasPclmul ? clmul_hw(a, b) : clmul_soft(a, b); }

std::string modulus_to_string(const Gf2Modulus& p) {
  std::vector<unsigned> exps;
  exps.push_back(p.degree);
  for (int i = 63; i >= 0; --i)
    if ((p.low >> i) & 1) exps.push_back(static_cast<unsigned>(i));
  std::string out;
  for (unsigned e : exps) {
    if (!out.empty()) out += '+';
    if (e == 0)
      out += '1';
    else if (e == 1)
      out += 'x';
    else
      out += "x^" + std::to_string(e);
  }
  return out;
}

Gf2Modulus parse_modulus(std::string_view text) {
  const std::vector<std::uint8_t> coeffs = parse_f2_polynomial(text, "x");
  if (coeffs.empty()) fail(Errc::InvalidArgument, "modulus must be nonzero");
  const unsigned deg = static_cast<unsigned>(coeffs.size() - 1);
  if (deg < 1 || deg > kMaxFieldDegree)
    fail(Errc::Unsupported, "modulus degree must be between 1 and 64, got " + std::to_string(deg));
  Gf2Modulus p;
  p.degree = deg;
  for (unsigned i = 0; i < deg; ++i)
    if (coeffs[i]) p.low |= std::uint64_t{1} << i;
  return p;
}

bool is_irreducible(const Gf2Modulus& p) {
  const unsigned n = p.degree;
  if (n == 0) return false;
  if (n == 1) return true;
  if ((p.low & 1) == 0) return false;  // divisible by x
  const Gf2Field f(p);
  const u128 full = full_modulus(p);
  // x^(2^n) == x (mod p)
  const Elem x = 2;
  if (f.frobenius(x, n) != x) return false;
  unsigned rest = n;
  for (unsigned r = 2; r <= rest; ++r) {
    if (rest % r) continue;
    while (rest % r == 0) rest /= r;
    const Elem h = f.frobenius(x, n / r) ^ x;
    if (degree128(polygcd128(full, h)) != 0) return false;
  }
  return true;
}

Gf2Modulus smallest_irreducible(unsigned degree) {
  if (degree < 1 || degree > kMaxFieldDegree) fail(Errc::Unsupported, "degree out of range");
  if (degree == 1) return {1, 0};
  for (std::uint64_t low = 1;; low += 2) {
    Gf2Modulus p{degree, low};
    if (is_irreducible(p)) return p;
  }
}

Gf2Field::Gf2Field(const Gf2Modulus& p) : mod_(p), n_(p.degree) {
  if (n_ < 1 || n_ > kMaxFieldDegree) fail(Errc::Unsupported, "field degree must be between 1 and 64");
  if (n_ < 64 && (p.low >> n_) != 0) fail(Errc::InvalidArgument, "modulus low part exceeds degree");
  mask_ = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  // mu = floor(x^(2n) / p) = x^n + floor(x^n * low / p).
  const u128 full = full_modulus(p);
  u128 rem = u128{p.low} << n_;
  u128 quot = 0;
  for (int d = degree128(rem); d >= static_cast<int>(n_); d = degree128(rem)) {
    quot |= u128{1} << (d - n_);
    rem ^= full << (d - n_);
  }
  mu_low_ = static_cast<Elem>(quot);
}

Elem Gf2Field::reduce(u128 c) const {
  // Barrett reduction; exact for deg c < 2n.
  const Elem hi = static_cast<Elem>(c >> n_);
  const Elem quot = hi ^ static_cast<Elem>(clmul(hi, mu_low_) >> n_);
  const u128 r = c ^ clmul(quot, mod_.low);
  return static_cast<Elem>(r) & mask_;
}

Elem Gf2Field::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = sqr(a);
    e >>= 1;
  }
  return result;
}

Elem Gf2Field::pow(Elem a, const mpz_class& e) const {
  if (e < 0) fail(Errc::InvalidArgument, "negative exponent");
  Elem result = 1;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = sqr(result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
  }
  return result;
}

Elem Gf2Field::inv(Elem a) const {
  if (a == 0) fail(Errc::ZeroElement, "inverse of zero");
  // a^(2^n - 2) = prod_{i=1}^{n-1} a^(2^i)
  Elem result = 1;
  Elem t = a;
  for (unsigned i = 1; i < n_; ++i) {
    t = sqr(t);
    result = mul(result, t);
  }
  return result;
}

Elem Gf2Field::frobenius(Elem a, unsigned times) const {
  for (unsigned i = 0; i < times; ++i) a = sqr(a);
  return a;
}

std::string elem_to_hex(Elem e) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(e));
  return buf;
}

Elem elem_from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty() || hex.size() > 16) fail(Errc::InvalidArgument, "bad hex element: " + std::string(hex));
  Elem v = 0;
  for (char ch : hex) {
    int d;
    if (ch >= '0' && ch <= '9')
      d = ch - '0';
    else if (ch >= 'a' && ch <= 'f')
      d = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F')
      d = ch - 'A' + 10;
    else
      fail(Errc::InvalidArgument, "bad hex element: " + std::string(hex));
    v = (v << 4) | static_cast<Elem>(d);
  }
  return v;
}

// ---------------------------------------------------------------------------

FieldCtx FieldCtx::make(unsigned k, unsigned m, std::optional<Gf2Modulus> modulus_override, const FieldOptions& opts) {
  if (k < 1 || m < 1 || k * m < 2) fail(Errc::InvalidArgument, "need k >= 1, m >= 1 and k*m >= 2");
  if (k * m > kMaxFieldDegree)
    fail(Errc::Unsupported, "extension degree k*m = " + std::to_string(k * m) + " exceeds 64");
  Gf2Modulus p;
  if (modulus_override) {
    p = *modulus_override;
    if (p.degree != k * m)
      fail(Errc::InvalidArgument, "modulus degree " + std::to_string(p.degree) + " != k*m = " + std::to_string(k * m));
    if (!is_irreducible(p)) fail(Errc::NonIrreducibleModulus, modulus_to_string(p) + " is reducible over F_2");
  } else {
    p = smallest_irreducible(k * m);
  }
  return FieldCtx(k, m, p, factor_qm_minus_1(k * m, 1, opts.factoring));
}

Elem FieldCtx::pow(Elem a, const mpz_class& e) const {
  if (a == 0 && e == 0) fail(Errc::ZeroToZero, "0^0 is undefined");
  return field_.pow(a, e);
}

Elem FieldCtx::inv(Elem a) const { return field_.inv(a); }

Elem FieldCtx::find_primitive() const {
  std::vector<std::uint64_t> cofactors;
  for (const auto& pp : order_factors_.primes())
    cofactors.push_back(group_order() / pp.prime.get_ui());
  for (Elem u = 2; u <= field_.mask(); ++u) {
    bool ok = true;
    for (std::uint64_t c : cofactors) {
      if (field_.pow(u, c) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return u;
  }
  fail(Errc::InvalidArgument, "no primitive element found");
}

}  // namespace pnpair
