#include "pnpair/pair_search.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include <json.hpp>

#include "pnpair/errors.hpp"

namespace pnpair {

using nlohmann::json;

DegeneracyFlags degeneracy(const FieldCtx& ctx, const RationalMap& f) {
  DegeneracyFlags fl;
  fl.is_yx = f.c == 0 && f.d != 0 && ctx.mul(f.b, f.d) == ctx.mul(f.a, f.e);
  fl.is_yx2 = f.d == 0 && f.b == 0 && f.c == 0;
  fl.is_excluded_matrix = ctx.k() == 1 && ctx.m() % 2 == 1 && f.a != 0 && f.a == f.b && f.a == f.d && f.c == 0 &&
                          f.e == 0;
  return fl;
}

// ---------------------------------------------------------------------------
// Witness search kernels

namespace {

constexpr unsigned kFastTableDegree = 16;

struct FastTables {
  std::uint32_t order = 0;  // 2^n - 1
  std::vector<std::uint32_t> exp;
  std::vector<std::uint32_t> log;
  std::vector<std::uint8_t> prim_normal;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> candidates;  // (i, alpha^i) with alpha^i normal

  std::uint32_t mul(std::uint32_t u, std::uint32_t v) const {
    if (u == 0 || v == 0) return 0;
    std::uint32_t s = log[u] + log[v];
    if (s >= order) s -= order;
    return exp[s];
  }
};

std::shared_ptr<const FastTables> build_fast_tables(const FieldCtx& ctx, const FqModule& mod, Elem alpha) {
  auto t = std::make_shared<FastTables>();
  const std::uint32_t N = static_cast<std::uint32_t>(ctx.group_order());
  t->order = N;
  t->exp.resize(N);
  t->log.assign(std::size_t{N} + 1, 0);
  Elem x = 1;
  for (std::uint32_t i = 0; i < N; ++i) {
    t->exp[i] = static_cast<std::uint32_t>(x);
    t->log[x] = i;
    x = ctx.mul(x, alpha);
  }
  if (x != 1) fail(Errc::InvalidArgument, "alpha is not primitive");
  std::vector<std::uint8_t> normal(std::size_t{N} + 1, 0);
  for (std::uint32_t u = 1; u <= N; ++u) normal[u] = mod.is_normal(u);
  t->prim_normal.assign(std::size_t{N} + 1, 0);
  for (std::uint32_t u = 1; u <= N; ++u) t->prim_normal[u] = normal[u] && std::gcd(t->log[u], N) == 1;
  for (std::uint32_t i = 1; i < N; ++i) {
    if (std::gcd(i, N) != 1) continue;
    if (normal[t->exp[i]]) t->candidates.emplace_back(i, t->exp[i]);
  }
  return t;
}

bool is_primitive_fast(const FieldCtx& ctx, const std::vector<std::uint64_t>& cofactors, Elem y) {
  if (y == 0) return false;
  for (std::uint64_t c : cofactors)
    if (ctx.pow(y, c) == 1) return false;
  return true;
}

}  // namespace

struct QuintupleTester::Impl {
  const FieldCtx* ctx = nullptr;
  Elem alpha = 0;
  std::shared_ptr<const FqModule> module;
  std::shared_ptr<const FastTables> fast;
  std::vector<std::uint64_t> cofactors;
  // General path: lazily grown list of (i, alpha^i) with alpha^i normal.
  std::vector<std::pair<std::uint64_t, Elem>> cand;
  std::uint64_t next_i = 1;

  bool extend() {
    const std::uint64_t N = ctx->group_order();
    while (next_i < N) {
      const std::uint64_t i = next_i++;
      if (std::gcd(i, N) != 1) continue;
      const Elem x = ctx->pow(alpha, i);
      if (module->is_normal(x)) {
        cand.emplace_back(i, x);
        return true;
      }
    }
    return false;
  }

  QuintupleResult test(const RationalMap& f) {
    QuintupleResult r;
    r.q5 = f;
    r.flags = degeneracy(*ctx, f);
    if (fast) {
      const FastTables& t = *fast;
      const auto a = static_cast<std::uint32_t>(f.a), b = static_cast<std::uint32_t>(f.b),
                 c = static_cast<std::uint32_t>(f.c), d = static_cast<std::uint32_t>(f.d),
                 e = static_cast<std::uint32_t>(f.e);
      for (const auto& [i, x] : t.candidates) {
        const std::uint32_t den = t.mul(d, x) ^ e;
        if (den == 0) continue;
        const std::uint32_t num = t.mul(t.mul(a, x) ^ b, x) ^ c;
        if (num == 0) continue;
        std::uint32_t ly = t.log[num] + (t.order - t.log[den]);
        if (ly >= t.order) ly -= t.order;
        if (t.prim_normal[t.exp[ly]]) {
          r.witness_i = i;
          return r;
        }
      }
      r.exceptional = true;
      return r;
    }
    for (std::size_t idx = 0;; ++idx) {
      if (idx == cand.size() && !extend()) break;
      const auto [i, x] = cand[idx];
      const auto y = eval_map(*ctx, f, x);
      if (!y || !is_primitive_fast(*ctx, cofactors, *y) || !module->is_normal(*y)) continue;
      r.witness_i = i;
      return r;
    }
    r.exceptional = true;
    return r;
  }
};

QuintupleTester::QuintupleTester(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
QuintupleTester::~QuintupleTester() = default;
QuintupleTester::QuintupleTester(QuintupleTester&&) noexcept = default;

QuintupleTester::QuintupleTester(const FieldCtx& ctx, Elem alpha) : impl_(std::make_unique<Impl>()) {
  if (!is_primitive(ctx, alpha)) fail(Errc::InvalidArgument, "alpha = " + elem_to_hex(alpha) + " is not primitive");
  impl_->ctx = &ctx;
  impl_->alpha = alpha;
  impl_->module = std::make_shared<FqModule>(ctx);
  for (const auto& pp : ctx.group_order_factors().primes())
    impl_->cofactors.push_back(ctx.group_order() / pp.prime.get_ui());
  if (ctx.n() <= kFastTableDegree) impl_->fast = build_fast_tables(ctx, *impl_->module, alpha);
}

QuintupleResult QuintupleTester::test(const RationalMap& f) {
  if (!is_valid_quintuple(f)) fail(Errc::InvalidArgument, "quintuple needs a != 0 and (d, e) != (0, 0)");
  return impl_->test(f);
}

QuintupleTester QuintupleTester::clone() const {
  auto copy = std::make_unique<Impl>();
  copy->ctx = impl_->ctx;
  copy->alpha = impl_->alpha;
  copy->module = impl_->module;
  copy->fast = impl_->fast;
  copy->cofactors = impl_->cofactors;
  return QuintupleTester(std::move(copy));
}

QuintupleResult test_quintuple(const FieldCtx& ctx, Elem alpha, const RationalMap& f) {
  QuintupleTester t(ctx, alpha);
  return t.test(f);
}

bool verify_witness(const FieldCtx& ctx, Elem alpha, const RationalMap& f, std::uint64_t i) {
  const std::uint64_t N = ctx.group_order();
  if (i == 0 || std::gcd(i, N) != 1) return false;
  const Elem x = ctx.pow(alpha, i);
  if (mult_order(ctx, x) != N || !is_normal(ctx, x)) return false;
  const auto y = eval_map(ctx, f, x);
  return y && *y != 0 && mult_order(ctx, *y) == N && is_normal(ctx, *y);
}

bool verify_counterexample(const FieldCtx& ctx, Elem alpha, const RationalMap& f, std::uint64_t cap) {
  if (ctx.n() >= 64 || ctx.group_order() + 1 > cap)
    fail(Errc::FieldTooLarge, "counterexample verification needs q^m <= " + std::to_string(cap));
  if (!is_valid_quintuple(f)) fail(Errc::InvalidArgument, "quintuple needs a != 0 and (d, e) != (0, 0)");
  if (mult_order(ctx, alpha) != ctx.group_order()) fail(Errc::InvalidArgument, "alpha is not primitive");
  const std::uint64_t N = ctx.group_order();
  Elem x = 1;
  for (std::uint64_t i = 1; i < N; ++i) {
    x = ctx.mul(x, alpha);
    if (std::gcd(i, N) != 1 || !is_normal(ctx, x)) continue;
    const auto y = eval_map(ctx, f, x);
    if (!y || *y == 0) continue;
    if (mult_order(ctx, *y) == N && is_normal(ctx, *y)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Enumeration

mpz_class valid_quintuple_count(unsigned n) {
  mpz_class N;
  mpz_ui_pow_ui(N.get_mpz_t(), 2, n);
  return (N - 1) * N * N * (N * N - 1);
}

RationalMap quintuple_at(unsigned n, std::uint64_t index) {
  if (n > 12) fail(Errc::Unsupported, "enumeration index needs n <= 12");
  const std::uint64_t N = std::uint64_t{1} << n;
  const std::uint64_t de_count = N * N - 1;
  RationalMap f;
  const std::uint64_t de = index % de_count + 1;
  std::uint64_t t = index / de_count;
  f.c = t % N;
  t /= N;
  f.b = t % N;
  f.a = t / N + 1;
  f.d = de >> n;
  f.e = de & (N - 1);
  return f;
}

std::uint64_t index_of(unsigned n, const RationalMap& f) {
  if (n > 12) fail(Errc::Unsupported, "enumeration index needs n <= 12");
  if (!is_valid_quintuple(f)) fail(Errc::InvalidArgument, "quintuple needs a != 0 and (d, e) != (0, 0)");
  const std::uint64_t N = std::uint64_t{1} << n;
  const std::uint64_t de = (f.d << n) | f.e;
  return (((f.a - 1) * N + f.b) * N + f.c) * (N * N - 1) + (de - 1);
}

// ---------------------------------------------------------------------------
// Exhaustive runs with checkpoints

namespace {

struct WorkerState {
  std::uint64_t next_j = 0;
  bool done = false;
  std::uint64_t checked = 0, exceptional = 0;
  FlagCounts fc, fe;
  std::vector<std::uint64_t> exceptional_indices;
};

struct RunSetup {
  unsigned k = 0, m = 0;
  Gf2Modulus modulus;
  Elem alpha = 0;
  unsigned shard_index = 0, shard_total = 1;
  unsigned workers = 1;
  bool emit = false;
};

json flags_json(const FlagCounts& f) { return {{"yx", f.yx}, {"yx2", f.yx2}, {"excluded_matrix", f.excluded_matrix}}; }

FlagCounts flags_from(const json& j) {
  return {j.at("yx").get<std::uint64_t>(), j.at("yx2").get<std::uint64_t>(),
          j.at("excluded_matrix").get<std::uint64_t>()};
}

void write_checkpoint(const std::string& path, const RunSetup& s, const std::vector<WorkerState>& states) {
  json j;
  j["format"] = "pnpair-checkpoint-1";
  j["k"] = s.k;
  j["m"] = s.m;
  j["modulus"] = modulus_to_string(s.modulus);
  j["alpha"] = elem_to_hex(s.alpha);
  j["shard"] = {{"index", s.shard_index + 1}, {"total", s.shard_total}};
  j["emit_exceptional"] = s.emit;
  j["workers"] = json::array();
  for (const WorkerState& w : states) {
    j["workers"].push_back({{"next_j", w.next_j},
                            {"done", w.done},
                            {"checked", w.checked},
                            {"exceptional", w.exceptional},
                            {"flagged_checked", flags_json(w.fc)},
                            {"flagged_exceptional", flags_json(w.fe)},
                            {"exceptional_indices", w.exceptional_indices}});
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) fail(Errc::Io, "cannot write checkpoint " + tmp);
    out << j.dump() << '\n';
    if (!out) fail(Errc::Io, "cannot write checkpoint " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) fail(Errc::Io, "cannot rename checkpoint to " + path);
}

SearchReport run_exhaustive(const FieldCtx& ctx, const SearchOptions& opts, const RunSetup& setup,
                            std::vector<WorkerState> states) {
  const unsigned n = ctx.n();
  const std::uint64_t total = valid_quintuple_count(n).get_ui();
  const std::uint64_t T = setup.shard_total, I = setup.shard_index;
  const std::uint64_t jmax = total > I ? (total - I + T - 1) / T : 0;
  const unsigned W = setup.workers;

  QuintupleTester proto(ctx, setup.alpha);
  std::mutex mu;
  std::condition_variable cv;
  unsigned running = W;

  auto work = [&](unsigned w, QuintupleTester tester) {
    constexpr std::uint64_t kChunk = 4096;
    std::uint64_t steps = 0;
    std::uint64_t j;
    {
      std::lock_guard<std::mutex> lock(mu);
      j = states[w].next_j;
    }
    bool stopped = false;
    while (j < jmax && !stopped) {
      WorkerState local;
      std::uint64_t taken = 0;
      for (; j < jmax && taken < kChunk; j += W, ++taken) {
        if (opts.stop_after && steps >= opts.stop_after) {
          stopped = true;
          break;
        }
        ++steps;
        const std::uint64_t idx = j * T + I;
        const QuintupleResult r = tester.test(quintuple_at(n, idx));
        ++local.checked;
        local.fc.add(r.flags);
        if (r.exceptional) {
          ++local.exceptional;
          local.fe.add(r.flags);
          if (setup.emit) local.exceptional_indices.push_back(idx);
        }
      }
      std::lock_guard<std::mutex> lock(mu);
      WorkerState& s = states[w];
      s.next_j = j;
      s.checked += local.checked;
      s.exceptional += local.exceptional;
      s.fc.add(local.fc);
      s.fe.add(local.fe);
      s.exceptional_indices.insert(s.exceptional_indices.end(), local.exceptional_indices.begin(),
                                   local.exceptional_indices.end());
    }
    std::lock_guard<std::mutex> lock(mu);
    states[w].next_j = j;
    if (j >= jmax) states[w].done = true;
    --running;
    cv.notify_all();
  };

  std::vector<std::thread> pool;
  for (unsigned w = 0; w < W; ++w) pool.emplace_back(work, w, proto.clone());
  {
    std::unique_lock<std::mutex> lock(mu);
    const auto interval = std::chrono::duration<double>(opts.checkpoint_interval_s);
    while (running > 0) {
      cv.wait_for(lock, interval);
      if (running > 0 && !opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, setup, states);
    }
  }
  for (auto& t : pool) t.join();
  if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, setup, states);

  SearchReport rep;
  rep.k = setup.k;
  rep.m = setup.m;
  rep.modulus = setup.modulus;
  rep.alpha = setup.alpha;
  rep.exhaustive = true;
  rep.shard_index = setup.shard_index;
  rep.shard_total = setup.shard_total;
  rep.complete = true;
  std::vector<std::uint64_t> indices;
  for (const WorkerState& s : states) {
    rep.checked += s.checked;
    rep.exceptional += s.exceptional;
    rep.flagged_checked.add(s.fc);
    rep.flagged_exceptional.add(s.fe);
    rep.complete = rep.complete && s.done;
    indices.insert(indices.end(), s.exceptional_indices.begin(), s.exceptional_indices.end());
  }
  std::sort(indices.begin(), indices.end());
  for (std::uint64_t idx : indices) {
    const RationalMap f = quintuple_at(n, idx);
    rep.exceptional_list.push_back({idx, f, degeneracy(ctx, f)});
  }
  return rep;
}

unsigned resolve_threads(unsigned requested) {
  return requested ? requested : std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

SearchReport exhaustive_search(const FieldCtx& ctx, const SearchOptions& opts) {
  if (opts.exhaustive_cap > (1u << 12))
    fail(Errc::InvalidArgument, "exhaustive cap may not exceed 4096");
  if (ctx.n() > 12 || ctx.group_order() + 1 > opts.exhaustive_cap)
    fail(Errc::FieldTooLarge, "exhaustive search needs q^m <= " + std::to_string(opts.exhaustive_cap));
  if (opts.shard_total < 1 || opts.shard_index >= opts.shard_total)
    fail(Errc::InvalidArgument, "shard index must lie in 1..total");
  RunSetup s;
  s.k = ctx.k();
  s.m = ctx.m();
  s.modulus = ctx.modulus();
  s.alpha = opts.alpha ? *opts.alpha : ctx.find_primitive();
  s.shard_index = opts.shard_index;
  s.shard_total = opts.shard_total;
  s.workers = resolve_threads(opts.threads);
  s.emit = opts.emit_exceptional;
  std::vector<WorkerState> states(s.workers);
  for (unsigned w = 0; w < s.workers; ++w) states[w].next_j = w;
  return run_exhaustive(ctx, opts, s, std::move(states));
}

SearchReport resume_search(const FieldCtx& ctx, const std::string& path, const SearchOptions& opts) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open checkpoint " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(Errc::Io, "malformed checkpoint " + path + ": " + e.what());
  }
  RunSetup s;
  std::vector<WorkerState> states;
  try {
    if (j.at("format") != "pnpair-checkpoint-1") fail(Errc::Io, "unknown checkpoint format in " + path);
    s.k = j.at("k").get<unsigned>();
    s.m = j.at("m").get<unsigned>();
    s.modulus = parse_modulus(j.at("modulus").get<std::string>());
    s.alpha = elem_from_hex(j.at("alpha").get<std::string>());
    s.shard_index = j.at("shard").at("index").get<unsigned>() - 1;
    s.shard_total = j.at("shard").at("total").get<unsigned>();
    s.emit = j.at("emit_exceptional").get<bool>();
    for (const json& w : j.at("workers")) {
      WorkerState st;
      st.next_j = w.at("next_j").get<std::uint64_t>();
      st.done = w.at("done").get<bool>();
      st.checked = w.at("checked").get<std::uint64_t>();
      st.exceptional = w.at("exceptional").get<std::uint64_t>();
      st.fc = flags_from(w.at("flagged_checked"));
      st.fe = flags_from(w.at("flagged_exceptional"));
      st.exceptional_indices = w.at("exceptional_indices").get<std::vector<std::uint64_t>>();
      states.push_back(std::move(st));
    }
  } catch (const json::exception& e) {
    fail(Errc::Io, "malformed checkpoint " + path + ": " + e.what());
  }
  if (s.k != ctx.k() || s.m != ctx.m() || !(s.modulus == ctx.modulus()))
    fail(Errc::InvalidArgument, "checkpoint " + path + " belongs to a different field");
  if (states.empty()) fail(Errc::Io, "checkpoint has no workers");
  s.workers = static_cast<unsigned>(states.size());
  SearchOptions o = opts;
  o.checkpoint_path = opts.checkpoint_path.empty() ? path : opts.checkpoint_path;
  if (ctx.n() > 12) fail(Errc::FieldTooLarge, "exhaustive search needs n <= 12");
  return run_exhaustive(ctx, o, s, std::move(states));
}

SearchReport sampled_search(const FieldCtx& ctx, const SearchOptions& opts) {
  SearchReport rep;
  rep.k = ctx.k();
  rep.m = ctx.m();
  rep.modulus = ctx.modulus();
  rep.alpha = opts.alpha ? *opts.alpha : ctx.find_primitive();
  rep.exhaustive = false;
  rep.seed = opts.seed;
  rep.budget = opts.budget;

  const mpz_class total = valid_quintuple_count(ctx.n());
  std::uint64_t budget = opts.budget;
  if (total.fits_ulong_p() && total.get_ui() < budget) budget = total.get_ui();

  // Draws come from a fixed generator consuming whole 64-bit words, so a
  // (seed, budget) pair always yields the same quintuples.
  std::mt19937_64 rng(opts.seed);
  const Elem mask = ctx.field().mask();
  std::set<std::array<Elem, 5>> seen;
  std::vector<RationalMap> draws;
  draws.reserve(budget);
  while (draws.size() < budget) {
    RationalMap f;
    do f.a = rng() & mask;
    while (f.a == 0);
    f.b = rng() & mask;
    f.c = rng() & mask;
    do {
      f.d = rng() & mask;
      f.e = rng() & mask;
    } while (f.d == 0 && f.e == 0);
    if (seen.insert({f.a, f.b, f.c, f.d, f.e}).second) draws.push_back(f);
  }

  const unsigned W = std::max(1u, std::min<unsigned>(resolve_threads(opts.threads),
                                                     static_cast<unsigned>(std::max<std::size_t>(draws.size(), 1))));
  std::vector<QuintupleResult> results(draws.size());
  QuintupleTester proto(ctx, rep.alpha);
  std::vector<std::thread> pool;
  auto work = [&](unsigned w, QuintupleTester tester) {
    for (std::size_t i = w; i < draws.size(); i += W) results[i] = tester.test(draws[i]);
  };
  for (unsigned w = 1; w < W; ++w) pool.emplace_back(work, w, proto.clone());
  work(0, proto.clone());
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < results.size(); ++i) {
    const QuintupleResult& r = results[i];
    ++rep.checked;
    rep.flagged_checked.add(r.flags);
    if (r.exceptional) {
      ++rep.exceptional;
      rep.flagged_exceptional.add(r.flags);
      if (opts.emit_exceptional) rep.exceptional_list.push_back({i, r.q5, r.flags});
    }
  }
  return rep;
}

SearchReport merge_reports(const std::vector<SearchReport>& parts) {
  if (parts.empty()) fail(Errc::InvalidArgument, "nothing to merge");
  SearchReport out = parts.front();
  out.checked = out.exceptional = 0;
  out.flagged_checked = out.flagged_exceptional = {};
  out.exceptional_list.clear();
  out.complete = true;
  std::set<unsigned> shards;
  for (const SearchReport& p : parts) {
    if (p.k != out.k || p.m != out.m || !(p.modulus == out.modulus) || p.exhaustive != out.exhaustive ||
        p.shard_total != out.shard_total)
      fail(Errc::InvalidArgument, "reports describe different runs");
    if (!shards.insert(p.shard_index).second) fail(Errc::InvalidArgument, "shard merged twice");
    out.checked += p.checked;
    out.exceptional += p.exceptional;
    out.flagged_checked.add(p.flagged_checked);
    out.flagged_exceptional.add(p.flagged_exceptional);
    out.complete = out.complete && p.complete;
    out.exceptional_list.insert(out.exceptional_list.end(), p.exceptional_list.begin(), p.exceptional_list.end());
  }
  std::sort(out.exceptional_list.begin(), out.exceptional_list.end(),
            [](const ExceptionalEntry& x, const ExceptionalEntry& y) { return x.index < y.index; });
  if (shards.size() == out.shard_total) {
    out.shard_index = 0;
    out.shard_total = 1;
  }
  return out;
}

}  // namespace pnpair
