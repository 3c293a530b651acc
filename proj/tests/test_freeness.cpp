#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "pnpair/freeness.hpp"

using namespace pnpair;

namespace {

std::vector<std::pair<unsigned, unsigned>> fields_up_to(unsigned n_max) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned n = 2; n <= n_max; ++n)
    for (unsigned k = 1; k <= n; ++k)
      if (n % k == 0) out.emplace_back(k, n / k);
  return out;
}

// u is e-free iff u = w^p has no solution for every prime p | e.
bool e_free_brute(const FieldCtx& ctx, Elem u, const std::vector<std::uint64_t>& primes) {
  for (std::uint64_t p : primes)
    for (Elem w = 0; w <= ctx.group_order(); ++w)
      if (ctx.pow(w, p) == u) return false;
  return true;
}

// Images h o w over all w, for one factor h.
std::set<Elem> image_of(const FqModule& mod, const Poly& h) {
  std::set<Elem> out;
  for (Elem w = 0; w <= mod.ctx().group_order(); ++w) out.insert(mod.apply(h, w));
  return out;
}

}  // namespace

TEST_CASE("quintuple validity and evaluation") {
  const FieldCtx ctx = FieldCtx::make(1, 3, parse_modulus("x^3+x+1"));
  CHECK(is_valid_quintuple({2, 0, 0, 2, 2}));
  CHECK_FALSE(is_valid_quintuple({0, 1, 1, 1, 1}));
  CHECK_FALSE(is_valid_quintuple({1, 1, 1, 0, 0}));
  const RationalMap f{2, 0, 0, 2, 2};  // x^2 / (x + 1)
  CHECK_FALSE(eval_map(ctx, f, 1).has_value());
  for (Elem u = 2; u < 8; ++u) {
    const Elem num = ctx.mul(u, u);
    CHECK(eval_map(ctx, f, u) == ctx.mul(num, ctx.inv(u ^ 1)));
  }
}

TEST_CASE("gcd normality agrees with conjugate independence for n <= 12") {
  for (auto [k, m] : fields_up_to(12)) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    const Elem g = ctx.find_primitive();
    for (Elem u = 0; u <= ctx.group_order(); ++u)
      REQUIRE_MESSAGE(is_normal(ctx, u) == oracle::normal_by_conjugates(ctx, u, g), "k=", k, " m=", m, " u=", u);
  }
}

TEST_CASE("module normality agrees with the gcd test for n <= 12") {
  for (auto [k, m] : fields_up_to(12)) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    const FqModule mod(ctx);
    for (Elem u = 0; u <= ctx.group_order(); ++u)
      REQUIRE_MESSAGE(mod.is_normal(u) == is_normal(ctx, u), "k=", k, " m=", m, " u=", u);
  }
}

TEST_CASE("primitive elements and orders") {
  for (auto [k, m] : fields_up_to(12)) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    std::uint64_t primitive = 0;
    for (Elem u = 1; u <= ctx.group_order(); ++u) {
      primitive += is_primitive(ctx, u);
      if (u % 97 == 1) CHECK(mult_order(ctx, u) == oracle::order(ctx, u));
    }
    CHECK(primitive == oracle::euler_phi(ctx.group_order()));
  }
}

TEST_CASE("e-freeness agrees with the definition") {
  for (auto [k, m] : fields_up_to(8)) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    const auto primes = oracle::distinct_primes(ctx.group_order());
    for (std::size_t mask = 0; mask < (std::size_t{1} << primes.size()); ++mask) {
      std::vector<std::uint64_t> sel;
      for (std::size_t i = 0; i < primes.size(); ++i)
        if (mask >> i & 1) sel.push_back(primes[i]);
      for (Elem u = 0; u <= ctx.group_order(); u += 1 + ctx.group_order() / 40)
        CHECK(is_e_free(ctx, u, sel) == e_free_brute(ctx, u, sel));
    }
    for (Elem u = 1; u <= ctx.group_order(); ++u) CHECK(is_e_free(ctx, u, primes) == is_primitive(ctx, u));
  }
  const FieldCtx ctx = FieldCtx::make(1, 4);
  CHECK(is_e_free(ctx, 0, {}));
  CHECK_FALSE(is_e_free(ctx, 0, {3}));
}

TEST_CASE("g-freeness agrees with the definition") {
  for (auto [k, m] : fields_up_to(8)) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    const FqModule mod(ctx);
    // With x^m - 1 = prod h_j^(2^a), u is h_j-free iff u is not h_j o w.
    for (std::size_t j = 0; j < mod.factors().size(); ++j) {
      const std::set<Elem> img = image_of(mod, mod.factors()[j]);
      for (Elem u = 0; u <= ctx.group_order(); ++u)
        REQUIRE_MESSAGE(mod.is_g_free(u, {j}) == !img.count(u), "k=", k, " m=", m, " j=", j, " u=", u);
    }
  }
}

TEST_CASE("F_q-order annihilates and is minimal") {
  for (auto [k, m] : fields_up_to(8)) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    const FqModule mod(ctx);
    std::uint64_t full = 0;
    for (Elem u = 0; u <= ctx.group_order(); ++u) {
      const Poly ord = mod.fq_order(u);
      CHECK(ord.lead() == 1);
      CHECK(mod.apply(ord, u) == 0);
      for (const Poly& h : mod.factors()) {
        Poly quot, rem;
        poly_divmod(mod.small(), ord, h, quot, rem);
        if (rem.is_zero()) CHECK(mod.apply(quot, u) != 0);
      }
      full += ord.degree() == static_cast<int>(m);
    }
    CHECK(normal_element_count(mod.structure()) == static_cast<unsigned long>(full));
  }
}

TEST_CASE("count_M agrees with a direct count") {
  std::mt19937_64 rng(11);
  for (auto [k, m] : fields_up_to(6)) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    const FqModule mod(ctx);
    const FreenessSpec full = FreenessSpec::full(mod);
    for (int t = 0; t < 20; ++t) {
      RationalMap f;
      do {
        f = {rng() & ctx.group_order(), rng() & ctx.group_order(), rng() & ctx.group_order(),
             rng() & ctx.group_order(), rng() & ctx.group_order()};
      } while (!is_valid_quintuple(f));
      std::uint64_t ref = 0, poles = 0;
      for (Elem u = 0; u <= ctx.group_order(); ++u) {
        const auto v = eval_map(ctx, f, u);
        if (!v) {
          ++poles;
          continue;
        }
        ref += is_primitive(ctx, u) && is_normal(ctx, u) && is_primitive(ctx, *v) && is_normal(ctx, *v);
      }
      const CountMResult r = count_M(mod, f, full, full, 1);
      CHECK(r.count == ref);
      CHECK(r.poles_skipped == poles);
      CHECK(count_M(mod, f, FreenessSpec::trivial(), FreenessSpec::trivial(), 2).count ==
            ctx.group_order() + 1 - poles);
    }
  }
}

TEST_CASE("divisor specifications") {
  const FieldCtx ctx = FieldCtx::make(1, 6);
  const FqModule mod(ctx);
  CHECK(e_primes_of_divisor(ctx, 21) == std::vector<std::uint64_t>{3, 7});
  CHECK(e_primes_of_divisor(ctx, 1).empty());
  CHECK_THROWS(e_primes_of_divisor(ctx, 5));
  CHECK(g_factors_of_spec(mod, "1").empty());
  CHECK(g_factors_of_spec(mod, "x^m-1").size() == mod.factors().size());
  CHECK(g_factors_of_spec(mod, "x+1").size() == 1);
  CHECK(g_factors_of_spec(mod, "deg:2").size() == 1);
}
