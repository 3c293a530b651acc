#include "pnpair/freeness.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <thread>

#include "pnpair/errors.hpp"
#include "pnpair/expr_parser.hpp"

namespace pnpair {

std::optional<Elem> eval_map(const FieldCtx& ctx, const RationalMap& f, Elem u) {
  const Elem den = ctx.mul(f.d, u) ^ f.e;
  if (den == 0) return std::nullopt;
  const Elem num = ctx.mul(ctx.mul(f.a, u) ^ f.b, u) ^ f.c;
  return ctx.mul(num, ctx.inv(den));
}

std::uint64_t mult_order(const FieldCtx& ctx, Elem u) {
  if (u == 0) fail(Errc::ZeroElement, "multiplicative order of zero");
  std::uint64_t order = ctx.group_order();
  for (const auto& pp : ctx.group_order_factors().primes()) {
    const std::uint64_t p = pp.prime.get_ui();
    for (unsigned i = 0; i < pp.exponent; ++i) {
      if (ctx.pow(u, order / p) != 1) break;
      order /= p;
    }
  }
  return order;
}

bool is_primitive(const FieldCtx& ctx, Elem u) {
  if (u == 0) return false;
  for (const auto& pp : ctx.group_order_factors().primes())
    if (ctx.pow(u, ctx.group_order() / pp.prime.get_ui()) == 1) return false;
  return true;
}

bool is_e_free(const FieldCtx& ctx, Elem u, const std::vector<std::uint64_t>& e_primes) {
  if (u == 0) return e_primes.empty();
  for (std::uint64_t p : e_primes)
    if (ctx.pow(u, ctx.group_order() / p) == 1) return false;
  return true;
}

bool is_normal(const FieldCtx& ctx, Elem u) {
  const unsigned m = ctx.m();
  std::vector<Elem> coeffs(m);
  Elem v = u;
  for (unsigned i = 0; i < m; ++i) {
    coeffs[m - 1 - i] = v;
    v = ctx.frobenius_q(v);
  }
  const Poly conj(std::move(coeffs));
  if (conj.is_zero()) return false;
  return poly_gcd(ctx.field(), Poly::xn_minus_one(m), conj).is_one();
}

// ---------------------------------------------------------------------------

FqModule::FqModule(const FieldCtx& ctx)
    : ctx_(&ctx),
      xs_(xm_structure(ctx.k(), ctx.m())),
      small_(small_field(ctx.k())),
      factors_(explicit_factors(xs_)),
      emb_(small_, ctx.field()) {
  const Poly xm1 = Poly::xn_minus_one(ctx.m());
  for (const Poly& h : factors_) cofactors_big_.push_back(emb_.map(poly_div_exact(small_, xm1, h)));
}

Elem FqModule::apply_big(const Poly& g, Elem u) const {
  Elem acc = 0;
  Elem v = u;
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    if (g.c[i]) acc ^= ctx_->mul(g.c[i], v);
    v = ctx_->frobenius_q(v);
  }
  return acc;
}

Elem FqModule::apply(const Poly& g, Elem u) const { return apply_big(emb_.map(g), u); }

Poly FqModule::product(const std::vector<unsigned>& exponents) const {
  Poly r = Poly::constant(1);
  for (std::size_t j = 0; j < factors_.size(); ++j)
    for (unsigned t = 0; t < exponents[j]; ++t) r = poly_mul(small_, r, factors_[j]);
  return r;
}

std::vector<unsigned> FqModule::fq_order_exponents(Elem u) const {
  std::vector<unsigned> exps(factors_.size(), xs_.multiplicity);
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    while (exps[j] > 0) {
      --exps[j];
      if (apply(product(exps), u) != 0) {
        ++exps[j];
        break;
      }
    }
  }
  return exps;
}

Poly FqModule::fq_order(Elem u) const { return product(fq_order_exponents(u)); }

bool FqModule::is_g_free(Elem u, const std::vector<std::size_t>& g_factors) const {
  for (std::size_t j : g_factors)
    if (apply_big(cofactors_big_.at(j), u) == 0) return false;
  return true;
}

bool FqModule::is_normal(Elem u) const {
  for (const Poly& c : cofactors_big_)
    if (apply_big(c, u) == 0) return false;
  return true;
}

FreenessSpec FreenessSpec::full(const FqModule& mod) {
  FreenessSpec s;
  for (const auto& pp : mod.ctx().group_order_factors().primes()) s.e_primes.push_back(pp.prime.get_ui());
  for (std::size_t j = 0; j < mod.factors().size(); ++j) s.g_factors.push_back(j);
  return s;
}

std::vector<std::uint64_t> e_primes_of_divisor(const FieldCtx& ctx, const mpz_class& e) {
  const mpz_class n(std::to_string(ctx.group_order()));
  if (e <= 0 || n % e != 0) fail(Errc::InvalidArgument, "e = " + e.get_str() + " does not divide q^m-1 = " + n.get_str());
  std::vector<std::uint64_t> out;
  for (const auto& pp : ctx.group_order_factors().primes())
    if (e % pp.prime == 0) out.push_back(pp.prime.get_ui());
  return out;
}

std::vector<std::size_t> g_factors_of_spec(const FqModule& mod, std::string_view spec) {
  const unsigned m = mod.ctx().m();
  std::vector<std::size_t> all(mod.factors().size());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  if (spec == "full" || spec == "x^m-1") return all;
  if (spec == "1") return {};
  if (spec.starts_with("deg:")) {
    std::vector<unsigned> wanted;
    std::string rest(spec.substr(4));
    std::size_t pos = 0;
    while (pos < rest.size()) {
      const std::size_t comma = rest.find(',', pos);
      const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        wanted.push_back(static_cast<unsigned>(std::stoul(tok)));
      } catch (const std::exception&) {
        fail(Errc::InvalidArgument, "bad degree list in g spec: " + std::string(spec));
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    std::vector<std::size_t> out;
    for (std::size_t j : all)
      if (std::find(wanted.begin(), wanted.end(), static_cast<unsigned>(mod.factors()[j].degree())) != wanted.end())
        out.push_back(j);
    return out;
  }
  const std::vector<std::uint8_t> g2 = parse_f2_polynomial(spec, "x");
  const Poly g(std::vector<Elem>(g2.begin(), g2.end()));
  if (g.is_zero() || !poly_mod(mod.small(), Poly::xn_minus_one(m), g).is_zero())
    fail(Errc::InvalidArgument, "g = " + std::string(spec) + " does not divide x^" + std::to_string(m) + "-1");
  std::vector<std::size_t> out;
  for (std::size_t j : all)
    if (poly_mod(mod.small(), g, mod.factors()[j]).is_zero()) out.push_back(j);
  return out;
}

CountMResult count_M(const FqModule& mod, const RationalMap& f, const FreenessSpec& s1, const FreenessSpec& s2,
                     unsigned threads, std::uint64_t cap) {
  const FieldCtx& ctx = mod.ctx();
  const std::uint64_t size = ctx.group_order() + 1;
  if (ctx.n() >= 64 || size > cap)
    fail(Errc::FieldTooLarge, "count_M needs q^m <= " + std::to_string(cap));
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, size));
  std::atomic<std::uint64_t> count{0}, poles{0};
  auto work = [&](unsigned w) {
    std::uint64_t c = 0, p = 0;
    for (std::uint64_t u = w; u < size; u += threads) {
      const auto y = eval_map(ctx, f, u);
      if (!y) {
        ++p;
        continue;
      }
      if (is_e_free(ctx, u, s1.e_primes) && mod.is_g_free(u, s1.g_factors) && is_e_free(ctx, *y, s2.e_primes) &&
          mod.is_g_free(*y, s2.g_factors))
        ++c;
    }
    count += c;
    poles += p;
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  return {count.load(), poles.load()};
}

}  // namespace pnpair
