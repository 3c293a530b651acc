#include "pnpair/arith_factor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pnpair/errors.hpp"

namespace pnpair {

namespace {

constexpr std::uint32_t kTrialLimit = 1000000;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(const mpz_class& n, const mpz_class& d, unsigned s, unsigned long base) {
  mpz_class a = base;
  a %= n;
  if (a == 0) return true;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const mpz_class nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial divisor or
// n itself when this polynomial failed.
mpz_class brent_rho(const mpz_class& n, unsigned long c, std::uint64_t& budget) {
  constexpr std::uint64_t kBatch = 128;
  mpz_class y = 2, x, ys, q = 1, g = 1, diff;
  std::uint64_t r = 1;
  auto step = [&](mpz_class& v) {
    v = (v * v + c) % n;
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      const std::uint64_t lim = std::min(kBatch, r - k);
      if (budget < lim) fail(Errc::FactorizationFailure, "rho iteration budget exhausted on " + n.get_str());
      budget -= lim;
      for (std::uint64_t i = 0; i < lim; ++i) {
        step(y);
        diff = x - y;
        q = (q * abs(diff)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      diff = x - ys;
      mpz_class ad = abs(diff);
      mpz_gcd(g.get_mpz_t(), ad.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split_cofactor(const mpz_class& n, const FactorOptions& opts, std::vector<mpz_class>& primes_out) {
  std::vector<mpz_class> stack{n};
  while (!stack.empty()) {
    mpz_class c = stack.back();
    stack.pop_back();
    if (c == 1) continue;
    if (is_probable_prime(c)) {
      primes_out.push_back(c);
      continue;
    }
    mpz_class root;
    if (mpz_perfect_square_p(c.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), c.get_mpz_t());
      stack.push_back(root);
      stack.push_back(root);
      continue;
    }
    std::uint64_t budget = opts.rho_budget;
    mpz_class d = c;
    for (unsigned long poly = 1; d == c; ++poly) {
      d = brent_rho(c, poly, budget);
      if (poly > 64 && d == c) fail(Errc::FactorizationFailure, "rho failed on " + c.get_str());
    }
    stack.push_back(d);
    stack.push_back(c / d);
  }
}

IntFactorization assemble(const mpz_class& n, std::vector<mpz_class> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<PrimePower> out;
  mpz_class rest = n;
  for (const auto& p : primes) {
    unsigned e = 0;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) {
      rest /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  }
  if (rest != 1) fail(Errc::FactorizationFailure, "incomplete factorization of " + n.get_str());
  return IntFactorization(n, std::move(out));
}

int mobius(unsigned n) {
  int result = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

IntFactorization::IntFactorization(mpz_class value, std::vector<PrimePower> primes)
    : value_(std::move(value)), primes_(std::move(primes)) {
  if (value_ < 1) fail(Errc::InvalidArgument, "factorization of a non-positive integer");
  mpz_class prod = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (primes_[i].exponent == 0 || primes_[i].prime < 2)
      fail(Errc::InvalidArgument, "invalid prime power in factorization");
    if (i > 0 && primes_[i - 1].prime >= primes_[i].prime)
      fail(Errc::InvalidArgument, "primes must be strictly increasing");
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), primes_[i].prime.get_mpz_t(), primes_[i].exponent);
    prod *= pe;
  }
  if (prod != value_) fail(Errc::InvalidArgument, "factors do not multiply to " + value_.get_str());
}

mpz_class IntFactorization::W() const {
  mpz_class w = 1;
  w <<= omega();
  return w;
}

mpz_class IntFactorization::euler_phi() const {
  mpz_class phi = value_;
  for (const auto& pp : primes_) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

mpz_class IntFactorization::radical() const {
  mpz_class r = 1;
  for (const auto& pp : primes_) r *= pp.prime;
  return r;
}

bool is_probable_prime(const mpz_class& n) {
  if (n < 2) return false;
  static constexpr unsigned long kBases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                             41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};
  for (unsigned long p : kBases) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  mpz_class d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  // The first 12 prime bases are a deterministic witness set below 3.3 * 10^24.
  const bool small = mpz_sizeinbase(n.get_mpz_t(), 2) <= 80;
  const std::size_t rounds = small ? 12 : std::size(kBases);
  for (std::size_t i = 0; i < rounds; ++i)
    if (!miller_rabin_round(n, d, s, kBases[i])) return false;
  return true;
}

IntFactorization factor(const mpz_class& n, const FactorOptions& opts) {
  if (n < 1) fail(Errc::InvalidArgument, "factor requires n >= 1");
  if (n == 1) return {};
  if (opts.cache) {
    if (auto hit = opts.cache->lookup(n)) return *hit;
  }
  std::vector<mpz_class> found;
  mpz_class rest = n;
  bool rest_is_prime = false;
  for (std::uint32_t p : small_primes()) {
    if (rest == 1) break;
    if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) {
      rest_is_prime = true;
      break;
    }
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      found.emplace_back(p);
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
    }
  }
  if (rest != 1) {
    // Everything below kTrialLimit^2 with no small factor is prime.
    mpz_class bound = kTrialLimit;
    bound *= kTrialLimit;
    if (rest_is_prime || rest < bound)
      found.push_back(rest);
    else
      split_cofactor(rest, opts, found);
  }
  IntFactorization f = assemble(n, std::move(found));
  if (opts.cache) opts.cache->store(f);
  return f;
}

mpz_class cyclotomic_at_two(unsigned d) {
  if (d == 0) fail(Errc::InvalidArgument, "cyclotomic index must be positive");
  mpz_class num = 1, den = 1;
  for (unsigned e = 1; e <= d; ++e) {
    if (d % e) continue;
    const int mu = mobius(d / e);
    if (mu == 0) continue;
    mpz_class t = 1;
    t <<= e;
    t -= 1;
    (mu > 0 ? num : den) *= t;
  }
  return num / den;
}

IntFactorization factor_qm_minus_1(unsigned k, unsigned m, const FactorOptions& opts) {
  if (k == 0 || m == 0) fail(Errc::InvalidArgument, "k and m must be positive");
  const unsigned n = k * m;
  mpz_class value = 1;
  value <<= n;
  value -= 1;
  if (opts.cache) {
    if (auto hit = opts.cache->lookup(value)) return *hit;
  }
  std::vector<mpz_class> primes;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    const IntFactorization piece = factor(cyclotomic_at_two(d), opts);
    for (const auto& pp : piece.primes()) primes.push_back(pp.prime);
  }
  IntFactorization f = assemble(value, std::move(primes));
  if (opts.cache) opts.cache->store(f);
  return f;
}

// ---------------------------------------------------------------------------

std::string to_cache_line(const IntFactorization& f) {
  std::string line = f.value().get_str() + "=";
  if (f.primes().empty()) return line + "1";
  for (std::size_t i = 0; i < f.primes().size(); ++i) {
    if (i) line += '*';
    line += f.primes()[i].prime.get_str() + "^" + std::to_string(f.primes()[i].exponent);
  }
  return line;
}

IntFactorization parse_cache_line(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) fail(Errc::InvalidArgument, "cache line without '='");
  mpz_class value(std::string(line.substr(0, eq)));
  std::string_view rhs = line.substr(eq + 1);
  std::vector<PrimePower> primes;
  if (rhs != "1") {
    while (!rhs.empty()) {
      const auto star = rhs.find('*');
      std::string_view term = rhs.substr(0, star);
      const auto caret = term.find('^');
      PrimePower pp;
      pp.prime = mpz_class(std::string(term.substr(0, caret)));
      pp.exponent = caret == std::string_view::npos ? 1u : std::stoul(std::string(term.substr(caret + 1)));
      primes.push_back(pp);
      if (star == std::string_view::npos) break;
      rhs.remove_prefix(star + 1);
    }
  }
  return IntFactorization(std::move(value), std::move(primes));
}

FactorCache::FactorCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    records_[line.substr(0, eq)] = line;
  }
}

std::optional<IntFactorization> FactorCache::lookup(const mpz_class& n) const {
  std::string line;
  {
    std::lock_guard lock(mu_);
    auto it = records_.find(n.get_str());
    if (it == records_.end()) return std::nullopt;
    line = it->second;
  }
  try {
    return parse_cache_line(line);
  } catch (const Error&) {
    return std::nullopt;  // corrupt record: recompute
  }
}

void FactorCache::store(const IntFactorization& f) {
  const std::string line = to_cache_line(f);
  std::lock_guard lock(mu_);
  auto [it, inserted] = records_.emplace(f.value().get_str(), line);
  if (!inserted) return;
  std::ofstream out(path_, std::ios::app);
  if (out) out << line << '\n';
}

std::size_t FactorCache::size() const {
  std::lock_guard lock(mu_);
  return records_.size();
}

// ---------------------------------------------------------------------------

mpq_class parse_decimal(std::string_view text) {
  std::string mant;
  long exp10 = 0;
  std::size_t i = 0;
  bool seen_digit = false, after_point = false;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      mant += ch;
      seen_digit = true;
      if (after_point) --exp10;
    } else if (ch == '.' && !after_point) {
      after_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail(Errc::InvalidArgument, "not a decimal number: " + std::string(text));
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') fail(Errc::InvalidArgument, "not a decimal number: " + std::string(text));
    try {
      exp10 += std::stol(std::string(text.substr(i + 1)));
    } catch (const std::exception&) {
      fail(Errc::InvalidArgument, "bad exponent in " + std::string(text));
    }
  }
  mpz_class num(mant), scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  mpq_class r = exp10 >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  r.canonicalize();
  return r;
}

WBoundReport check_W_bound(std::uint64_t n_max, unsigned root, std::string_view constant, bool odd_only) {
  if (n_max < 1 || root < 1) fail(Errc::InvalidArgument, "check_W_bound needs n_max >= 1 and root >= 1");
  if (n_max > (std::uint64_t{1} << 32)) fail(Errc::InvalidArgument, "n_max too large for the omega sieve");
  WBoundReport rep;
  rep.n_max = n_max;
  rep.root = root;
  rep.constant = std::string(constant);
  rep.odd_only = odd_only;

  // omega(n) for all n <= n_max by a prime sieve.
  std::vector<std::uint8_t> om(n_max + 1, 0);
  for (std::uint64_t p = 2; p <= n_max; ++p) {
    if (om[p] != 0) continue;
    for (std::uint64_t j = p; j <= n_max; j += p) ++om[j];
  }

  const mpq_class c = parse_decimal(constant);
  // W^root < c^root * n  <=>  W^root * den^root < num^root * n
  mpz_class num_pow, den_pow;
  mpz_pow_ui(num_pow.get_mpz_t(), c.get_num_mpz_t(), root);
  mpz_pow_ui(den_pow.get_mpz_t(), c.get_den_mpz_t(), root);

  mpz_class lhs, rhs;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    if (odd_only && n % 2 == 0) continue;
    ++rep.checked;
    const unsigned w_exp = om[n];
    lhs = den_pow;
    lhs <<= static_cast<mp_bitcnt_t>(w_exp) * root;
    rhs = num_pow * static_cast<unsigned long>(n);
    const double ratio = std::ldexp(1.0, static_cast<int>(w_exp)) / std::pow(static_cast<double>(n), 1.0 / root);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax = n;
    }
    if (!(lhs < rhs)) {
      ++rep.violation_count;
      if (rep.violations.size() < 32) rep.violations.push_back({n, w_exp});
    }
  }
  return rep;
}

}  // namespace pnpair
