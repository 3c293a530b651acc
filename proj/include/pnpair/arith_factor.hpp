#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pnpair {

struct PrimePower {
  mpz_class prime;
  unsigned exponent = 0;
};

// A positive integer together with its complete factorization. Primes are
// strictly increasing and their powers multiply back to value().
class IntFactorization {
 public:
  IntFactorization() : value_(1) {}
  // Throws InvalidArgument when the factors do not multiply to value or are unordered.
  IntFactorization(mpz_class value, std::vector<PrimePower> primes);

  const mpz_class& value() const { return value_; }
  const std::vector<PrimePower>& primes() const { return primes_; }

  unsigned omega() const { return static_cast<unsigned>(primes_.size()); }
  mpz_class W() const;
  mpz_class euler_phi() const;
  mpz_class radical() const;

 private:
  mpz_class value_;
  std::vector<PrimePower> primes_;
};

inline unsigned omega(const IntFactorization& f) { return f.omega(); }
inline mpz_class W(const IntFactorization& f) { return f.W(); }
inline mpz_class euler_phi(const IntFactorization& f) { return f.euler_phi(); }

// Maps n to its factorization; one record per line, "n=p1^e1*p2^e2*...".
// Safe for concurrent use within one process.
class FactorCache {
 public:
  explicit FactorCache(std::string path);

  std::optional<IntFactorization> lookup(const mpz_class& n) const;
  void store(const IntFactorization& f);
  const std::string& path() const { return path_; }
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::map<std::string, std::string> records_;
};

std::string to_cache_line(const IntFactorization& f);
IntFactorization parse_cache_line(std::string_view line);

struct FactorOptions {
  // Total rho iterations allowed per composite cofactor.
  std::uint64_t rho_budget = std::uint64_t{1} << 28;
  FactorCache* cache = nullptr;
};

// Deterministic for n < 2^64; a strong probable-prime test to 24 prime bases beyond.
bool is_probable_prime(const mpz_class& n);

IntFactorization factor(const mpz_class& n, const FactorOptions& opts = {});

// Factors 2^(k*m) - 1 piecewise through the values Phi_d(2), d | k*m.
IntFactorization factor_qm_minus_1(unsigned k, unsigned m, const FactorOptions& opts = {});

// Value of the d-th cyclotomic polynomial at 2.
mpz_class cyclotomic_at_two(unsigned d);

struct WBoundViolation {
  std::uint64_t n = 0;
  unsigned omega = 0;
};

struct WBoundReport {
  std::uint64_t n_max = 0;
  unsigned root = 0;
  std::string constant;
  bool odd_only = false;
  std::uint64_t checked = 0;
  std::uint64_t violation_count = 0;
  std::vector<WBoundViolation> violations;  // first few only
  double max_ratio = 0.0;                   // max of W(n) / n^(1/root)
  std::uint64_t argmax = 0;
};

// Exact check of W(n) < constant * n^(1/root) for every n <= n_max (odd n only if requested).
WBoundReport check_W_bound(std::uint64_t n_max, unsigned root, std::string_view constant, bool odd_only);

// Parses a plain or scientific decimal ("6.46", "1.10992e9") into an exact rational.
mpq_class parse_decimal(std::string_view text);

}  // namespace pnpair
