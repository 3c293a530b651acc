#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "pnpair/errors.hpp"
#include "pnpair/pair_search.hpp"
#include "pnpair/report_json.hpp"

using namespace pnpair;

namespace {

SearchReport run(const FieldCtx& ctx, unsigned shard, unsigned total, unsigned threads, bool emit = true) {
  SearchOptions o;
  o.shard_index = shard;
  o.shard_total = total;
  o.threads = threads;
  o.emit_exceptional = emit;
  return exhaustive_search(ctx, o);
}

void check_same(const SearchReport& a, const SearchReport& b) {
  CHECK(a.checked == b.checked);
  CHECK(a.exceptional == b.exceptional);
  CHECK(a.flagged_checked.yx == b.flagged_checked.yx);
  CHECK(a.flagged_exceptional.yx2 == b.flagged_exceptional.yx2);
  REQUIRE(a.exceptional_list.size() == b.exceptional_list.size());
  for (std::size_t i = 0; i < a.exceptional_list.size(); ++i) {
    CHECK(a.exceptional_list[i].index == b.exceptional_list[i].index);
    CHECK(a.exceptional_list[i].q5 == b.exceptional_list[i].q5);
  }
}

}  // namespace

TEST_CASE("degeneracy flags") {
  const FieldCtx f2 = FieldCtx::make(1, 3, parse_modulus("x^3+x+1"));
  CHECK(degeneracy(f2, {2, 0, 0, 3, 0}).is_yx);  // a x^2 / (d x)
  CHECK(degeneracy(f2, {2, 2, 0, 2, 2}).is_yx);  // x (x + 1) / (x + 1)
  CHECK(degeneracy(f2, {2, 0, 0, 0, 5}).is_yx2);
  CHECK_FALSE(degeneracy(f2, {2, 0, 1, 0, 5}).any());
  CHECK(degeneracy(f2, {3, 3, 0, 3, 0}).is_excluded_matrix);
  const FieldCtx f4 = FieldCtx::make(2, 2);
  CHECK_FALSE(degeneracy(f4, {3, 3, 0, 3, 0}).is_excluded_matrix);
  const FieldCtx even = FieldCtx::make(1, 2);
  CHECK_FALSE(degeneracy(even, {1, 1, 0, 1, 0}).is_excluded_matrix);
}

TEST_CASE("enumeration index is a bijection") {
  for (unsigned n = 1; n <= 3; ++n) {
    const mpz_class total = valid_quintuple_count(n);
    std::uint64_t prev_key = 0;
    for (std::uint64_t i = 0; i < total.get_ui(); ++i) {
      const RationalMap f = quintuple_at(n, i);
      REQUIRE(is_valid_quintuple(f));
      CHECK(index_of(n, f) == i);
      // Ascending (a, b, c, d, e) order.
      const std::uint64_t key = ((((f.a << 8 | f.b) << 8 | f.c) << 8 | f.d) << 8) | f.e;
      if (i) CHECK(key > prev_key);
      prev_key = key;
    }
  }
  CHECK(valid_quintuple_count(2) == 720);
  CHECK(valid_quintuple_count(3) == 28224);
  CHECK(valid_quintuple_count(4) == 979200);
}

TEST_CASE("exhaustive (2, 2)") {
  const FieldCtx ctx = FieldCtx::make(1, 2, parse_modulus("x^2+x+1"));
  const SearchReport r = run(ctx, 0, 1, 1);
  CHECK(r.checked == 720);
  CHECK(r.exceptional == 252);
  CHECK(r.exceptional_list.size() == 252);
  CHECK(r.complete);
}

TEST_CASE("sharded runs merge to the unsharded run") {
  const FieldCtx ctx = FieldCtx::make(1, 2, parse_modulus("x^2+x+1"));
  const SearchReport whole = run(ctx, 0, 1, 1);
  for (unsigned total : {1u, 2u, 4u}) {
    std::vector<SearchReport> parts;
    for (unsigned s = 0; s < total; ++s) parts.push_back(run(ctx, s, total, 2));
    check_same(merge_reports(parts), whole);
    std::reverse(parts.begin(), parts.end());
    check_same(merge_reports(parts), whole);
  }
  std::vector<SearchReport> dup{run(ctx, 0, 2, 1), run(ctx, 0, 2, 1)};
  CHECK_THROWS_AS(merge_reports(dup), Error);
}

TEST_CASE("thread count does not change the result") {
  const FieldCtx ctx = FieldCtx::make(1, 3, parse_modulus("x^3+x+1"));
  check_same(run(ctx, 0, 1, 1), run(ctx, 0, 1, 3));
}

TEST_CASE("witnesses re-verify and exceptional quintuples have none") {
  const FieldCtx ctx = FieldCtx::make(1, 3, parse_modulus("x^3+x+1"));
  const Elem alpha = ctx.find_primitive();
  QuintupleTester t(ctx, alpha);
  for (std::uint64_t i = 0; i < 28224; i += 3) {
    const RationalMap f = quintuple_at(3, i);
    const QuintupleResult r = t.test(f);
    if (r.exceptional) {
      CHECK(verify_counterexample(ctx, alpha, f));
    } else {
      CHECK(std::gcd(r.witness_i, ctx.group_order()) == 1);
      CHECK(verify_witness(ctx, alpha, f, r.witness_i));
    }
  }
}

TEST_CASE("large fields use the general path consistently") {
  std::mt19937_64 rng(21);
  for (auto [k, m] : std::vector<std::pair<unsigned, unsigned>>{{1, 17}, {2, 9}, {3, 6}}) {
    const FieldCtx ctx = FieldCtx::make(k, m);
    const Elem alpha = ctx.find_primitive();
    QuintupleTester t(ctx, alpha);
    for (int s = 0; s < 20; ++s) {
      RationalMap f;
      do {
        f = {rng() & ctx.group_order(), rng() & ctx.group_order(), rng() & ctx.group_order(),
             rng() & ctx.group_order(), rng() & ctx.group_order()};
      } while (!is_valid_quintuple(f));
      const QuintupleResult r = t.test(f);
      REQUIRE_FALSE(r.exceptional);
      CHECK(verify_witness(ctx, alpha, f, r.witness_i));
      // The witness is the least admissible exponent.
      for (std::uint64_t i = 1; i < r.witness_i; ++i) CHECK_FALSE(verify_witness(ctx, alpha, f, i));
    }
  }
}

TEST_CASE("f = x and f = x^2 always have a witness for q^m <= 256") {
  for (unsigned k : {1u, 2u, 3u})
    for (unsigned m = k == 1 ? 2 : 1; k * m <= 8; ++m) {
      const FieldCtx ctx = FieldCtx::make(k, m);
      const Elem alpha = ctx.find_primitive();
      QuintupleTester t(ctx, alpha);
      for (Elem a = 1; a <= ctx.group_order(); ++a) {
        CHECK_FALSE(t.test({a, 0, 0, 0, a}).exceptional);
        for (Elem b = 0; b <= ctx.group_order(); ++b) CHECK_FALSE(t.test({a, b, 0, a, b}).exceptional);
      }
    }
}

TEST_CASE("sampled search is reproducible") {
  const FieldCtx ctx = FieldCtx::make(2, 3);
  SearchOptions o;
  o.exhaustive = false;
  o.budget = 3000;
  o.seed = 99;
  o.emit_exceptional = true;
  const SearchReport a = sampled_search(ctx, o);
  o.threads = 3;
  const SearchReport b = sampled_search(ctx, o);
  check_same(a, b);
  CHECK(a.checked == 3000);
  // A budget beyond the population checks every quintuple once.
  const FieldCtx tiny = FieldCtx::make(1, 2, parse_modulus("x^2+x+1"));
  o.budget = 5000;
  const SearchReport all = sampled_search(tiny, o);
  CHECK(all.checked == 720);
  CHECK(all.exceptional == 252);
}

TEST_CASE("checkpoint and resume reproduce the full run") {
  const FieldCtx ctx = FieldCtx::make(1, 3, parse_modulus("x^3+x+1"));
  const auto path = std::filesystem::temp_directory_path() / "pnpair_ck_test.json";
  std::filesystem::remove(path);
  SearchOptions o;
  o.threads = 2;
  o.emit_exceptional = true;
  o.checkpoint_path = path.string();
  o.stop_after = 3000;
  const SearchReport partial = exhaustive_search(ctx, o);
  CHECK_FALSE(partial.complete);
  CHECK(partial.checked < 28224);
  o.stop_after = 0;
  const SearchReport resumed = resume_search(ctx, path.string(), o);
  CHECK(resumed.complete);
  check_same(resumed, run(ctx, 0, 1, 1));
  std::filesystem::remove(path);
}

TEST_CASE("exhaustive search limits") {
  const FieldCtx big = FieldCtx::make(2, 4);
  SearchOptions o;
  CHECK_THROWS_AS(exhaustive_search(big, o), Error);
  o.exhaustive_cap = 5000;
  CHECK_THROWS_AS(exhaustive_search(big, o), Error);
  o.exhaustive_cap = 64;
  o.shard_index = 2;
  o.shard_total = 2;
  CHECK_THROWS_AS(exhaustive_search(FieldCtx::make(1, 2), o), Error);
}

TEST_CASE("search reports round-trip through JSON") {
  const FieldCtx ctx = FieldCtx::make(1, 2, parse_modulus("x^2+x+1"));
  const SearchReport r = run(ctx, 1, 2, 1);
  const SearchReport back = search_from_json(json::parse(search_json(r).dump()));
  check_same(r, back);
  CHECK(back.shard_index == 1);
  CHECK(back.shard_total == 2);
  CHECK(back.modulus == r.modulus);
}
