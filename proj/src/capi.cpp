#include "pnpair/pnpair.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <memory>
#include <mutex>
#include <new>
#include <string>
#include <thread>

#include "pnpair/errors.hpp"
#include "pnpair/expr_parser.hpp"
#include "pnpair/report_json.hpp"

using namespace pnpair;

struct pnpair_field {
  FieldCtx ctx;
  mutable std::once_flag module_once;
  mutable std::unique_ptr<FqModule> module;

  explicit pnpair_field(FieldCtx c) : ctx(std::move(c)) {}

  const FqModule& fq_module() const {
    std::call_once(module_once, [this] { module = std::make_unique<FqModule>(ctx); });
    return *module;
  }
};

namespace {

struct Config {
  std::mutex mu;
  std::unique_ptr<FactorCache> cache;
  std::uint64_t rho_budget = FactorOptions{}.rho_budget;
  unsigned threads = 0;
  bool timestamps = true;
};

Config& config() {
  static Config c;
  return c;
}

thread_local std::string g_last_error;

FactorOptions factor_options() {
  Config& c = config();
  std::lock_guard lock(c.mu);
  FactorOptions o;
  o.rho_budget = c.rho_budget;
  o.cache = c.cache.get();
  return o;
}

unsigned thread_count() {
  Config& c = config();
  std::lock_guard lock(c.mu);
  if (c.threads) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

bool timestamps_enabled() {
  Config& c = config();
  std::lock_guard lock(c.mu);
  return c.timestamps;
}

pnpair_status to_status(Errc e) {
  switch (e) {
    case Errc::InvalidArgument: return PNPAIR_ERR_INVALID_ARGUMENT;
    case Errc::NonIrreducibleModulus: return PNPAIR_ERR_NON_IRREDUCIBLE_MODULUS;
    case Errc::FactorizationFailure: return PNPAIR_ERR_FACTORIZATION_FAILURE;
    case Errc::FieldTooLarge: return PNPAIR_ERR_FIELD_TOO_LARGE;
    case Errc::ZeroToZero: return PNPAIR_ERR_ZERO_TO_ZERO;
    case Errc::ZeroElement: return PNPAIR_ERR_ZERO_ELEMENT;
    case Errc::Io: return PNPAIR_ERR_IO;
    case Errc::Unsupported: return PNPAIR_ERR_UNSUPPORTED;
  }
  return PNPAIR_ERR_INTERNAL;
}

template <class F>
pnpair_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PNPAIR_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return PNPAIR_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PNPAIR_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PNPAIR_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(Errc::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(json j, char** out) {
  require(out, "output pointer");
  if (timestamps_enabled() && j.is_object()) j["timestamp"] = utc_now();
  *out = dup_string(j.dump(2) + "\n");
}

const FieldCtx& ctx_of(const pnpair_field* f) {
  require(f, "field");
  return f->ctx;
}

Elem checked_elem(const FieldCtx& ctx, uint64_t a) {
  if (!ctx.contains(a)) fail(Errc::InvalidArgument, "element " + elem_to_hex(a) + " is outside the field");
  return a;
}

RationalMap map_of(const FieldCtx& ctx, const uint64_t q5[5]) {
  require(q5, "quintuple");
  return {checked_elem(ctx, q5[0]), checked_elem(ctx, q5[1]), checked_elem(ctx, q5[2]), checked_elem(ctx, q5[3]),
          checked_elem(ctx, q5[4])};
}

mpz_class parse_natural(const char* text, const char* what) {
  require(text, what);
  std::string s(text);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(Errc::InvalidArgument, std::string(what) + " must be a non-negative decimal integer, got '" + s + "'");
  return mpz_class(s);
}

// "q^m-1", "full" or a decimal divisor of q^m - 1.
std::vector<std::uint64_t> e_spec_primes(const FieldCtx& ctx, const char* spec) {
  const std::string s = spec ? spec : "q^m-1";
  if (s == "q^m-1" || s == "full") {
    std::vector<std::uint64_t> out;
    for (const auto& pp : ctx.group_order_factors().primes()) out.push_back(pp.prime.get_ui());
    return out;
  }
  return e_primes_of_divisor(ctx, parse_natural(s.c_str(), "e"));
}

std::vector<mpz_class> divisors(const IntFactorization& f) {
  std::vector<mpz_class> out{1};
  for (const auto& pp : f.primes()) {
    const std::size_t base = out.size();
    mpz_class pk = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      pk *= pp.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

json lemma53_entry(unsigned k, const mpz_class& a) {
  json j = {{"a", a.get_str()}};
  mpz_class q_minus_1;
  mpz_ui_pow_ui(q_minus_1.get_mpz_t(), 2, k);
  q_minus_1 -= 1;
  j["m_prime"] = mpz_class(q_minus_1 / a).get_str();
  const auto closed = lemma53_S(k, a);
  if (!closed) {
    j["S"] = nullptr;
    j["applicable"] = false;
    return j;
  }
  const SieveParameters generic = lemma53_generic(k, a);
  mpq_class two_q2(q_minus_1 + 1);
  two_q2 *= 2 * two_q2;
  j["applicable"] = true;
  j["S"] = rational_json(*closed);
  j["S_generic"] = generic.theta_positive ? rational_json(generic.S) : json(nullptr);
  j["matches_generic"] = generic.theta_positive && generic.S == *closed;
  j["below_2q2"] = *closed < two_q2;
  return j;
}

SearchOptions search_options(const pnpair_search_options* o) {
  require(o, "search options");
  SearchOptions s;
  s.exhaustive = o->exhaustive != 0;
  s.budget = o->budget;
  s.seed = o->seed;
  if (o->shard_total == 0 || o->shard_index == 0 || o->shard_index > o->shard_total)
    fail(Errc::InvalidArgument, "shard must be I/T with 1 <= I <= T");
  s.shard_index = o->shard_index - 1;
  s.shard_total = o->shard_total;
  s.threads = o->threads ? o->threads : thread_count();
  s.emit_exceptional = o->emit_exceptional != 0;
  if (o->exhaustive_cap == 0) fail(Errc::InvalidArgument, "exhaustive cap must be positive");
  s.exhaustive_cap = o->exhaustive_cap;
  if (o->has_alpha) s.alpha = o->alpha;
  if (o->checkpoint_path) s.checkpoint_path = o->checkpoint_path;
  if (o->checkpoint_interval_s > 0) s.checkpoint_interval_s = o->checkpoint_interval_s;
  s.stop_after = o->stop_after;
  return s;
}

void emit_search(const SearchReport& r, char** out, uint64_t* exceptional_count) {
  if (exceptional_count) *exceptional_count = r.exceptional;
  emit(search_json(r), out);
}

}  // namespace

extern "C" {

const char* pnpair_version(void) { return "1.0.0"; }

const char* pnpair_status_string(pnpair_status status) {
  switch (status) {
    case PNPAIR_OK: return "ok";
    case PNPAIR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PNPAIR_ERR_NON_IRREDUCIBLE_MODULUS: return "modulus is not irreducible";
    case PNPAIR_ERR_FACTORIZATION_FAILURE: return "factorization failed";
    case PNPAIR_ERR_FIELD_TOO_LARGE: return "field too large";
    case PNPAIR_ERR_ZERO_TO_ZERO: return "zero raised to the power zero";
    case PNPAIR_ERR_ZERO_ELEMENT: return "zero has no inverse";
    case PNPAIR_ERR_IO: return "i/o error";
    case PNPAIR_ERR_UNSUPPORTED: return "unsupported";
    case PNPAIR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pnpair_last_error(void) { return g_last_error.c_str(); }

void pnpair_free_string(char* s) { std::free(s); }

pnpair_status pnpair_set_factor_cache(const char* path) {
  return guarded([&] {
    std::unique_ptr<FactorCache> cache;
    if (path && *path) cache = std::make_unique<FactorCache>(path);
    Config& c = config();
    std::lock_guard lock(c.mu);
    c.cache = std::move(cache);
  });
}

void pnpair_set_rho_budget(uint64_t iterations) {
  Config& c = config();
  std::lock_guard lock(c.mu);
  c.rho_budget = iterations;
}

void pnpair_set_threads(unsigned threads) {
  Config& c = config();
  std::lock_guard lock(c.mu);
  c.threads = threads;
}

void pnpair_set_timestamps(int enabled) {
  Config& c = config();
  std::lock_guard lock(c.mu);
  c.timestamps = enabled != 0;
}

pnpair_status pnpair_field_create(unsigned k, unsigned m, const char* modulus, pnpair_field** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = nullptr;
    std::optional<Gf2Modulus> p;
    if (modulus && *modulus) p = parse_modulus(modulus);
    FieldOptions opts;
    opts.factoring = factor_options();
    *out = new pnpair_field(FieldCtx::make(k, m, p, opts));
  });
}

void pnpair_field_destroy(pnpair_field* field) { delete field; }

unsigned pnpair_field_degree(const pnpair_field* field) { return field ? field->ctx.n() : 0; }

pnpair_status pnpair_field_info_json(const pnpair_field* field, char** out_json) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    json j = field_json(ctx);
    j["xm1"] = xm_json(field->fq_module().structure());
    emit(std::move(j), out_json);
  });
}

pnpair_status pnpair_elem_parse(const pnpair_field* field, const char* text, uint64_t* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = parse_element(ctx_of(field).field(), text);
  });
}

pnpair_status pnpair_elem_add(const pnpair_field* field, uint64_t a, uint64_t b, uint64_t* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = ctx.add(checked_elem(ctx, a), checked_elem(ctx, b));
  });
}

pnpair_status pnpair_elem_mul(const pnpair_field* field, uint64_t a, uint64_t b, uint64_t* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = ctx.mul(checked_elem(ctx, a), checked_elem(ctx, b));
  });
}

pnpair_status pnpair_elem_pow(const pnpair_field* field, uint64_t a, const char* exponent, uint64_t* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = ctx.pow(checked_elem(ctx, a), parse_natural(exponent, "exponent"));
  });
}

pnpair_status pnpair_elem_inv(const pnpair_field* field, uint64_t a, uint64_t* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = ctx.inv(checked_elem(ctx, a));
  });
}

pnpair_status pnpair_elem_frobenius(const pnpair_field* field, uint64_t a, uint64_t* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = ctx.frobenius_q(checked_elem(ctx, a));
  });
}

pnpair_status pnpair_elem_order(const pnpair_field* field, uint64_t a, uint64_t* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = mult_order(ctx, checked_elem(ctx, a));
  });
}

pnpair_status pnpair_elem_is_primitive(const pnpair_field* field, uint64_t a, int* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = is_primitive(ctx, checked_elem(ctx, a));
  });
}

pnpair_status pnpair_elem_is_normal(const pnpair_field* field, uint64_t a, int* out) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    *out = is_normal(ctx, checked_elem(ctx, a));
  });
}

pnpair_status pnpair_find_primitive(const pnpair_field* field, uint64_t* out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = ctx_of(field).find_primitive();
  });
}

pnpair_status pnpair_map_eval(const pnpair_field* field, const uint64_t q5[5], uint64_t u, uint64_t* out,
                              int* is_pole) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    require(out, "output pointer");
    require(is_pole, "pole flag");
    const auto v = eval_map(ctx, map_of(ctx, q5), checked_elem(ctx, u));
    *is_pole = !v;
    *out = v.value_or(0);
  });
}

pnpair_status pnpair_factor_json(const char* n_decimal, char** out_json) {
  return guarded([&] { emit(factorization_json(factor(parse_natural(n_decimal, "n"), factor_options())), out_json); });
}

pnpair_status pnpair_factor_qm1_json(unsigned k, unsigned m, char** out_json) {
  return guarded([&] {
    if (k == 0 || m == 0) fail(Errc::InvalidArgument, "k and m must be positive");
    emit(factorization_json(factor_qm_minus_1(k, m, factor_options())), out_json);
  });
}

pnpair_status pnpair_xm1_json(unsigned k, unsigned m, int list_factors, char** out_json) {
  return guarded([&] {
    const XmStructure xs = xm_structure(k, m);
    json j = xm_json(xs);
    j["normal_elements"] = normal_element_count(xs).get_str();
    if (list_factors) {
      const Gf2Field small = small_field(k);
      json fs = json::array();
      for (const Poly& f : explicit_factors(xs)) fs.push_back(poly_to_string(f));
      j["small_field_modulus"] = modulus_to_string(small.modulus());
      j["factors"] = fs;
    }
    emit(std::move(j), out_json);
  });
}

pnpair_status pnpair_bound_json(unsigned k, unsigned m, const char* constant, char** out_json) {
  return guarded([&] {
    const mpz_class c = constant ? parse_natural(constant, "constant") : mpz_class(4);
    const IntFactorization order = factor_qm_minus_1(k, m, factor_options());
    const XmStructure xs = xm_structure(k, m);
    json j = plain_json(plain_condition(k, m, order.W(), order.W(), omega_xm(xs), omega_xm(xs), c));
    j["k"] = k;
    j["m"] = m;
    j["omega"] = order.omega();
    j["W"] = order.W().get_str();
    j["Omega"] = omega_xm(xs).get_str();
    j["constant"] = c.get_str();
    emit(std::move(j), out_json);
  });
}

pnpair_status pnpair_sieve_json(unsigned k, unsigned m, const char* d, const char* g, char** out_json) {
  return guarded([&] {
    const IntFactorization order = factor_qm_minus_1(k, m, factor_options());
    const XmStructure xs = xm_structure(k, m);
    if (!d && !g) {
      const auto best = auto_sieve(order, xs);
      json j = {{"auto", true}, {"passes", best.has_value()}};
      if (best) {
        j["choice"] = sieve_json(best->choice, best->eval);
        j["tried"] = best->tried;
      }
      emit(std::move(j), out_json);
      return;
    }
    const SieveChoice choice = make_sieve_choice(order, xs, d ? d : "q^m-1", g ? g : "1");
    emit(sieve_json(choice, sieve_eval(choice, k, m)), out_json);
  });
}

pnpair_status pnpair_lemma53_json(unsigned k, const char* a, char** out_json) {
  return guarded([&] {
    if (k == 0 || k > 62) fail(Errc::InvalidArgument, "k must lie in 1..62");
    json j = {{"q", std::to_string(std::uint64_t{1} << k)}};
    if (a) {
      j["cases"] = json::array({lemma53_entry(k, parse_natural(a, "a"))});
    } else {
      json cases = json::array();
      for (const mpz_class& div : divisors(factor(mpz_class((std::uint64_t{1} << k) - 1), factor_options())))
        cases.push_back(lemma53_entry(k, div));
      j["cases"] = cases;
    }
    emit(std::move(j), out_json);
  });
}

pnpair_status pnpair_lemma56_json(unsigned k, unsigned m, char** out_json) {
  return guarded([&] {
    json j = lemma56_json(lemma56_bound(xm_structure(k, m)));
    j["k"] = k;
    j["m"] = m;
    emit(std::move(j), out_json);
  });
}

pnpair_status pnpair_count_m_json(const pnpair_field* field, const uint64_t q5[5], const char* e1, const char* g1,
                                  const char* e2, const char* g2, char** out_json) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    const RationalMap f = map_of(ctx, q5);
    const FqModule& mod = field->fq_module();
    FreenessSpec s1{e_spec_primes(ctx, e1), g_factors_of_spec(mod, g1 ? g1 : "x^m-1")};
    FreenessSpec s2{e_spec_primes(ctx, e2), g_factors_of_spec(mod, g2 ? g2 : "x^m-1")};
    const CountMResult r = count_M(mod, f, s1, s2, thread_count());
    emit({{"quintuple", quintuple_json(f)},
          {"count", r.count},
          {"poles_skipped", r.poles_skipped},
          {"e1_primes", s1.e_primes},
          {"e2_primes", s2.e_primes},
          {"g1_factors", s1.g_factors.size()},
          {"g2_factors", s2.g_factors.size()}},
         out_json);
  });
}

void pnpair_search_options_init(pnpair_search_options* opts) {
  if (!opts) return;
  const SearchOptions d;
  *opts = pnpair_search_options{};
  opts->exhaustive = 1;
  opts->shard_index = 1;
  opts->shard_total = 1;
  opts->exhaustive_cap = d.exhaustive_cap;
  opts->checkpoint_interval_s = d.checkpoint_interval_s;
}

pnpair_status pnpair_search_json(const pnpair_field* field, const pnpair_search_options* opts, char** out_json,
                                 uint64_t* exceptional_count) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    const SearchOptions s = search_options(opts);
    emit_search(s.exhaustive ? exhaustive_search(ctx, s) : sampled_search(ctx, s), out_json, exceptional_count);
  });
}

pnpair_status pnpair_resume_json(const pnpair_field* field, const char* checkpoint_path,
                                 const pnpair_search_options* opts, char** out_json, uint64_t* exceptional_count) {
  return guarded([&] {
    require(checkpoint_path, "checkpoint path");
    const FieldCtx& ctx = ctx_of(field);
    emit_search(resume_search(ctx, checkpoint_path, search_options(opts)), out_json, exceptional_count);
  });
}

pnpair_status pnpair_merge_reports_json(const char* const* reports, size_t count, char** out_json,
                                        uint64_t* exceptional_count) {
  return guarded([&] {
    if (count == 0) fail(Errc::InvalidArgument, "no reports to merge");
    require(reports, "reports");
    std::vector<SearchReport> parts;
    for (size_t i = 0; i < count; ++i) {
      require(reports[i], "report");
      parts.push_back(search_from_json(json::parse(reports[i])));
    }
    emit_search(merge_reports(parts), out_json, exceptional_count);
  });
}

pnpair_status pnpair_verify_counterexample_json(const pnpair_field* field, const uint64_t q5[5], int has_alpha,
                                                uint64_t alpha, char** out_json, int* confirmed) {
  return guarded([&] {
    const FieldCtx& ctx = ctx_of(field);
    const RationalMap f = map_of(ctx, q5);
    if (!is_valid_quintuple(f)) fail(Errc::InvalidArgument, "quintuple needs a != 0 and (d, e) != (0, 0)");
    const Elem base = has_alpha ? checked_elem(ctx, alpha) : ctx.find_primitive();
    if (!is_primitive(ctx, base)) fail(Errc::InvalidArgument, "alpha " + elem_to_hex(base) + " is not primitive");
    const bool none = verify_counterexample(ctx, base, f);
    json j = {{"k", ctx.k()},
              {"m", ctx.m()},
              {"modulus", modulus_to_string(ctx.modulus())},
              {"alpha", elem_to_hex(base)},
              {"quintuple", quintuple_json(f)},
              {"flags", flags_json(degeneracy(ctx, f))},
              {"exceptional", none}};
    if (!none) {
      const QuintupleResult r = test_quintuple(ctx, base, f);
      j["witness_i"] = r.witness_i;
      j["witness"] = elem_to_hex(ctx.pow(base, r.witness_i));
    }
    if (confirmed) *confirmed = none;
    emit(std::move(j), out_json);
  });
}

pnpair_status pnpair_reproduce_tables(const char* data_dir, int table, int csv, char** out) {
  return guarded([&] {
    const std::string dir = data_dir && *data_dir ? std::string(data_dir) : default_data_dir();
    if (table < 0 || table > 2) fail(Errc::InvalidArgument, "table must be 0, 1 or 2");
    if (table == 0) {
      if (csv) fail(Errc::InvalidArgument, "CSV output needs a single table");
      emit(reproduce_all_json(reproduce_all(dir, factor_options(), thread_count())), out);
      return;
    }
    const std::string path = dir + "/table" + std::to_string(table) + ".csv";
    const TableReport rep = reproduce_table(table, load_table_csv(path), factor_options(), thread_count());
    if (csv) {
      require(out, "output pointer");
      *out = dup_string(table_csv(rep));
    } else {
      emit(table_json(rep), out);
    }
  });
}

pnpair_status pnpair_check_wbound_json(uint64_t n_max, unsigned root, const char* constant, int odd_only,
                                       char** out_json) {
  return guarded([&] {
    require(constant, "constant");
    emit(wbound_json(check_W_bound(n_max, root, constant, odd_only != 0)), out_json);
  });
}

}  // extern "C"
