#include "pnpair/bounds_sieve.hpp"

#include <algorithm>
#include <cmath>

#include "pnpair/errors.hpp"
#include "pnpair/expr_parser.hpp"

namespace pnpair {

namespace {

double approx_sqrt_of(const mpz_class& v) { return std::sqrt(v.get_d()); }

// Removes the multiset `part` from `all`; throws if it is not contained.
std::vector<unsigned> multiset_minus(std::vector<unsigned> all, const std::vector<unsigned>& part) {
  for (unsigned d : part) {
    auto it = std::find(all.begin(), all.end(), d);
    if (it == all.end()) fail(Errc::InvalidArgument, "g is not a divisor of x^m-1");
    all.erase(it);
  }
  return all;
}

}  // namespace

mpz_class q_pow_m(unsigned k, unsigned m) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k) * m);
  return r;
}

PlainCondition plain_condition(unsigned k, unsigned m, const mpz_class& W1, const mpz_class& W2,
                               const mpz_class& Omega1, const mpz_class& Omega2, const mpz_class& constant) {
  PlainCondition pc;
  pc.lhs_squared = q_pow_m(k, m);
  pc.rhs = constant * W1 * W2 * Omega1 * Omega2;
  pc.passes = pc.lhs_squared > pc.rhs * pc.rhs;
  pc.lhs_approx = approx_sqrt_of(pc.lhs_squared);
  pc.rhs_approx = pc.rhs.get_d();
  return pc;
}

PlainCondition plain_condition_full(unsigned k, unsigned m, const FactorOptions& opts, const mpz_class& constant) {
  const IntFactorization order = factor_qm_minus_1(k, m, opts);
  const XmStructure xs = xm_structure(k, m);
  const mpz_class W = order.W();
  const mpz_class Om = omega_xm(xs);
  return plain_condition(k, m, W, W, Om, Om, constant);
}

SieveParameters sieve_parameters(unsigned k, const std::vector<mpz_class>& remaining_primes,
                                 const std::vector<unsigned>& remaining_degrees) {
  SieveParameters sp;
  mpq_class sum = 0;
  for (const mpz_class& p : remaining_primes) sum += mpq_class(1, p);
  for (unsigned d : remaining_degrees) {
    mpz_class qd;
    mpz_ui_pow_ui(qd.get_mpz_t(), 2, static_cast<unsigned long>(k) * d);
    sum += mpq_class(1, qd);
  }
  sp.theta = 1 - 2 * sum;
  sp.theta.canonicalize();
  sp.theta_positive = sgn(sp.theta) > 0;
  if (sp.theta_positive) {
    const long count = 2 * static_cast<long>(remaining_primes.size() + remaining_degrees.size()) - 1;
    sp.S = mpq_class(count) / sp.theta + 2;
    sp.S.canonicalize();
  }
  return sp;
}

std::vector<unsigned> g_degrees_of_spec(const XmStructure& xs, std::string_view g_spec) {
  std::vector<unsigned> all = xs.sorted_degrees();
  if (g_spec == "x^m-1" || g_spec == "full") return all;
  if (g_spec == "1") return {};
  if (g_spec.starts_with("deg:")) {
    std::vector<unsigned> wanted;
    std::string rest(g_spec.substr(4));
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const std::size_t comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        wanted.push_back(static_cast<unsigned>(std::stoul(tok)));
      } catch (const std::exception&) {
        fail(Errc::InvalidArgument, "bad degree list in g spec: " + std::string(g_spec));
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    std::vector<unsigned> out;
    for (unsigned d : all)
      if (std::find(wanted.begin(), wanted.end(), d) != wanted.end()) out.push_back(d);
    return out;
  }
  return fq_degrees_of_f2_divisor(xs, parse_f2_polynomial(g_spec, "x"));
}

SieveChoice make_sieve_choice(const IntFactorization& order, const XmStructure& xs, std::string_view d_spec,
                              std::string_view g_spec) {
  SieveChoice c;
  if (d_spec == "q^m-1" || d_spec == "full") {
    c.d = order.value();
  } else {
    if (d_spec.empty() || c.d.set_str(std::string(d_spec), 10) != 0 || c.d <= 0)
      fail(Errc::InvalidArgument, "d must be a positive decimal integer or q^m-1, got '" + std::string(d_spec) + "'");
    if (order.value() % c.d != 0)
      fail(Errc::InvalidArgument, "d = " + c.d.get_str() + " does not divide q^m-1 = " + order.value().get_str());
  }
  for (const auto& pp : order.primes()) {
    if (c.d % pp.prime == 0)
      c.d_primes.push_back(pp.prime);
    else
      c.remaining_primes.push_back(pp.prime);
  }
  c.g_degrees = g_degrees_of_spec(xs, g_spec);
  c.remaining_degrees = multiset_minus(xs.sorted_degrees(), c.g_degrees);
  return c;
}

SieveEvaluation sieve_eval(const SieveChoice& choice, unsigned k, unsigned m) {
  SieveEvaluation ev;
  ev.k = k;
  ev.m = m;
  ev.n = choice.remaining_primes.size();
  ev.r = choice.remaining_degrees.size();
  const SieveParameters sp = sieve_parameters(k, choice.remaining_primes, choice.remaining_degrees);
  ev.theta = sp.theta;
  ev.theta_positive = sp.theta_positive;
  ev.S = sp.S;
  ev.W_d = omega_of_count(choice.d_primes.size());
  ev.Omega_g = omega_of_count(choice.g_degrees.size());
  ev.lhs_squared = q_pow_m(k, m);
  ev.theta_approx = ev.theta.get_d();
  ev.lhs_approx = approx_sqrt_of(ev.lhs_squared);
  if (ev.theta_positive) {
    ev.rhs = mpq_class(4 * ev.W_d * ev.W_d * ev.Omega_g * ev.Omega_g) * ev.S;
    ev.rhs.canonicalize();
    // q^m > (num/den)^2  <=>  q^m den^2 > num^2
    const mpz_class& num = ev.rhs.get_num();
    const mpz_class& den = ev.rhs.get_den();
    ev.passes = ev.lhs_squared * den * den > num * num;
    ev.S_approx = ev.S.get_d();
    ev.rhs_approx = ev.rhs.get_d();
  }
  return ev;
}

std::optional<AutoSieveResult> auto_sieve(const IntFactorization& order, const XmStructure& xs) {
  const std::vector<unsigned> degrees = xs.sorted_degrees();
  std::optional<AutoSieveResult> best;
  std::size_t tried = 0;
  for (std::size_t j = 0; j <= order.omega(); ++j) {
    SieveChoice base;
    base.d = 1;
    for (std::size_t i = 0; i < order.primes().size(); ++i) {
      if (i < j) {
        base.d *= order.primes()[i].prime;
        base.d_primes.push_back(order.primes()[i].prime);
      } else {
        base.remaining_primes.push_back(order.primes()[i].prime);
      }
    }
    for (std::size_t r = 0; r <= degrees.size(); ++r) {
      SieveChoice c = base;
      c.g_degrees.assign(degrees.begin(), degrees.end() - static_cast<std::ptrdiff_t>(r));
      c.remaining_degrees.assign(degrees.end() - static_cast<std::ptrdiff_t>(r), degrees.end());
      SieveEvaluation ev = sieve_eval(c, xs.k, xs.m);
      ++tried;
      if (!ev.passes) continue;
      if (!best || ev.rhs < best->eval.rhs) best = AutoSieveResult{std::move(c), std::move(ev), 0};
    }
  }
  if (best) best->tried = tried;
  return best;
}

std::optional<mpq_class> lemma53_S(unsigned k, const mpz_class& a) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2, k);
  if (a <= 0 || (q - 1) % a != 0) fail(Errc::InvalidArgument, "a must be a positive divisor of q-1");
  const mpz_class num = 2 * q * q - 6 * q + a * q + 4;
  const mpz_class den = a * q - 2 * q + 2;
  if (den <= 0) return std::nullopt;
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

SieveParameters lemma53_generic(unsigned k, const mpz_class& a) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2, k);
  if (a <= 0 || (q - 1) % a != 0) fail(Errc::InvalidArgument, "a must be a positive divisor of q-1");
  const mpz_class mp = (q - 1) / a;
  if (!mp.fits_ulong_p() || mp > (1u << 20)) fail(Errc::Unsupported, "m' too large");
  const std::vector<unsigned> linears(mp.get_ui(), 1);
  return sieve_parameters(k, {}, linears);
}

Lemma56Report lemma56_bound(const XmStructure& xs) {
  Lemma56Report rep;
  rep.m_prime = xs.m_prime;
  rep.u = xs.u;
  rep.applicable = xs.u > 1;
  if (!rep.applicable) return rep;
  std::vector<unsigned> remaining;
  for (unsigned d : xs.degrees)
    if (d >= xs.u) remaining.push_back(d);
  rep.params = sieve_parameters(xs.k, {}, remaining);
  rep.holds = rep.params.theta_positive && rep.params.S <= xs.m_prime;
  return rep;
}

}  // namespace pnpair
