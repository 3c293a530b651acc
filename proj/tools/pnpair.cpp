// Command-line front end. Talks to the library only through pnpair.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pnpair/pnpair.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFault = 1;
constexpr int kExitUsage = 2;
constexpr int kExitExceptional = 3;

struct Failure {
  pnpair_status status;
};

void check(pnpair_status s) {
  if (s != PNPAIR_OK) throw Failure{s};
}

int exit_code_for(pnpair_status s) {
  switch (s) {
    case PNPAIR_ERR_INVALID_ARGUMENT:
    case PNPAIR_ERR_NON_IRREDUCIBLE_MODULUS:
    case PNPAIR_ERR_FIELD_TOO_LARGE:
    case PNPAIR_ERR_UNSUPPORTED:
      return kExitUsage;
    default:
      return kExitFault;
  }
}

void print_owned(char* text) {
  std::fputs(text, stdout);
  pnpair_free_string(text);
}

// q is accepted as a decimal power of two.
unsigned log2_of_q(std::uint64_t q) {
  if (q < 2 || (q & (q - 1)) != 0) throw CLI::ValidationError("--q", "q must be a power of two >= 2");
  unsigned k = 0;
  while ((std::uint64_t{1} << k) != q) ++k;
  return k;
}

class Field {
 public:
  Field(std::uint64_t q, unsigned m, const std::string& modulus) {
    check(pnpair_field_create(log2_of_q(q), m, modulus.empty() ? nullptr : modulus.c_str(), &f_));
  }
  ~Field() { pnpair_field_destroy(f_); }
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;
  const pnpair_field* get() const { return f_; }

  std::uint64_t element(const std::string& text) const {
    std::uint64_t v = 0;
    check(pnpair_elem_parse(f_, text.c_str(), &v));
    return v;
  }

  // "a,b,c,d,e" with each entry hex or a polynomial in alpha.
  std::vector<std::uint64_t> quintuple(const std::string& text) const {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(element(item));
    if (out.size() != 5) throw CLI::ValidationError("--quintuple", "expected five comma-separated elements");
    return out;
  }

 private:
  pnpair_field* f_ = nullptr;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("merge-reports", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void parse_shard(const std::string& text, unsigned& index, unsigned& total) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) throw std::invalid_argument(text);
    index = static_cast<unsigned>(std::stoul(text.substr(0, slash)));
    total = static_cast<unsigned>(std::stoul(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--shard", "expected I/T, got '" + text + "'");
  }
}

const char* opt_cstr(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Primitive normal pairs over binary fields: arithmetic, sufficient conditions and searches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pnpair_version());

  unsigned threads = 0;
  std::string cache_path;
  std::uint64_t rho_budget = 0;
  bool no_timestamp = false;
  app.add_option("--threads", threads, "Worker threads (default: hardware parallelism)");
  app.add_option("--cache", cache_path, "Factorization cache file (default: $PNPAIR_CACHE)");
  app.add_option("--rho-budget", rho_budget, "Pollard rho iteration budget per factor");
  app.add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field from JSON output");

  std::uint64_t q = 0;
  unsigned m = 0;
  std::string modulus;
  auto add_qm = [&](CLI::App* sub) {
    sub->add_option("--q", q, "Field size q, a power of two")->required();
    sub->add_option("--m", m, "Extension degree m")->required()->check(CLI::PositiveNumber);
  };
  auto add_modulus = [&](CLI::App* sub) {
    sub->add_option("--modulus", modulus, "Irreducible F_2 polynomial of degree k*m (default: smallest)");
  };

  auto* field_info = app.add_subcommand("field-info", "Field parameters, q^m - 1 and x^m - 1 structure");
  add_qm(field_info);
  add_modulus(field_info);

  std::string factor_n;
  auto* factor = app.add_subcommand("factor", "Factor an integer, or q^m - 1 with --q/--m");
  factor->add_option("n", factor_n, "Non-negative decimal integer");
  factor->add_option("--q", q, "Factor q^m - 1 instead");
  factor->add_option("--m", m, "Exponent for --q");

  bool list_factors = false;
  auto* xm1 = app.add_subcommand("xm1", "Factorization shape of x^m - 1 over F_q");
  add_qm(xm1);
  xm1->add_flag("--factors", list_factors, "List the irreducible factors explicitly");

  std::string constant;
  auto* bound = app.add_subcommand("bound", "Plain sufficient condition with e = q^m - 1, g = x^m - 1");
  add_qm(bound);
  bound->add_option("--constant", constant, "Leading constant (default 4)");

  std::string d_spec, g_spec;
  bool sieve_auto = false;
  auto* sieve = app.add_subcommand("sieve", "Sieve condition for a chosen (d, g) or an automatic choice");
  add_qm(sieve);
  sieve->add_option("--d", d_spec, "Divisor of q^m - 1: decimal or q^m-1");
  sieve->add_option("--g", g_spec, "Divisor of x^m - 1: 1, x^m-1, deg:d1,... or an F_2 polynomial");
  sieve->add_flag("--auto", sieve_auto, "Search for a passing (d, g)");

  std::string a_text;
  auto* lemma53 = app.add_subcommand("lemma53", "Closed-form sieve constant when m' divides q - 1");
  lemma53->add_option("--q", q, "Field size q, a power of two")->required();
  lemma53->add_option("--a", a_text, "Divisor a of q - 1 (default: all divisors)");

  auto* lemma56 = app.add_subcommand("lemma56", "Sieve constant with g = product of factors below degree u");
  add_qm(lemma56);

  std::string quintuple_text, e1 = "q^m-1", g1 = "x^m-1", e2 = "q^m-1", g2 = "x^m-1";
  auto* count_m = app.add_subcommand("count-m", "Count u with u and f(u) free for the given divisors");
  add_qm(count_m);
  add_modulus(count_m);
  count_m->add_option("--quintuple", quintuple_text, "a,b,c,d,e of f = (a x^2 + b x + c)/(d x + e)")->required();
  count_m->add_option("--e1", e1, "Divisor of q^m - 1 for u");
  count_m->add_option("--g1", g1, "Divisor of x^m - 1 for u");
  count_m->add_option("--e2", e2, "Divisor of q^m - 1 for f(u)");
  count_m->add_option("--g2", g2, "Divisor of x^m - 1 for f(u)");

  pnpair_search_options sopts;
  pnpair_search_options_init(&sopts);
  bool exhaustive = false, emit_exceptional = false;
  std::uint64_t budget = 0, seed = 0, cap = sopts.exhaustive_cap, stop_after = 0;
  std::string shard = "1/1", resume_path, checkpoint_path, alpha_text;
  double checkpoint_interval = sopts.checkpoint_interval_s;
  auto* search = app.add_subcommand("search", "Search for quintuples without a primitive normal pair");
  add_qm(search);
  add_modulus(search);
  auto* ex_opt = search->add_flag("--exhaustive", exhaustive, "Enumerate every valid quintuple");
  auto* budget_opt = search->add_option("--budget", budget, "Number of distinct quintuples to sample");
  ex_opt->excludes(budget_opt);
  search->add_option("--seed", seed, "Sampling seed");
  search->add_option("--shard", shard, "Shard I/T of the enumeration (1-based)");
  search->add_option("--resume", resume_path, "Resume an exhaustive run from a checkpoint file");
  search->add_option("--checkpoint", checkpoint_path, "Write checkpoints to this file");
  search->add_option("--checkpoint-interval", checkpoint_interval, "Seconds between checkpoints");
  search->add_option("--stop-after", stop_after, "Stop each worker after this many steps (for testing resume)");
  search->add_option("--alpha", alpha_text, "Primitive base element (default: first in hex order)");
  search->add_option("--exhaustive-cap", cap, "Largest q^m searched exhaustively")->check(CLI::Range(1, 4096));
  search->add_flag("--emit-exceptional", emit_exceptional, "List every exceptional quintuple");

  auto* verify = app.add_subcommand("verify-counterexample", "Confirm that a quintuple has no witness");
  add_qm(verify);
  add_modulus(verify);
  verify->add_option("--quintuple", quintuple_text, "a,b,c,d,e")->required();
  verify->add_option("--alpha", alpha_text, "Primitive base element");

  int table = 0;
  std::string format = "json", data_dir;
  auto* reproduce = app.add_subcommand("reproduce-tables", "Recompute the shipped sieve tables and exception lists");
  reproduce->add_option("--table", table, "0 for everything, 1 or 2 for one table")->check(CLI::Range(0, 2));
  reproduce->add_option("--format", format, "json or csv (csv needs --table)")
      ->check(CLI::IsMember({"json", "csv"}));
  reproduce->add_option("--data", data_dir, "Directory holding the table CSV files");

  std::uint64_t n_max = 1000000;
  unsigned root = 0;
  bool odd_only = false;
  auto* wbound = app.add_subcommand("check-wbound", "Check W(n) < C n^(1/root) for all n up to a limit");
  wbound->add_option("--n-max", n_max, "Upper limit for n");
  wbound->add_option("--root", root, "Root r in n^(1/r)")->required()->check(CLI::PositiveNumber);
  wbound->add_option("--constant", constant, "Decimal constant C")->required();
  wbound->add_flag("--odd", odd_only, "Only odd n");

  std::vector<std::string> report_files;
  auto* merge = app.add_subcommand("merge-reports", "Merge shard reports of one search");
  merge->add_option("files", report_files, "Search report JSON files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cache_path.empty())
      if (const char* env = std::getenv("PNPAIR_CACHE")) cache_path = env;
    if (!cache_path.empty()) check(pnpair_set_factor_cache(cache_path.c_str()));
    if (rho_budget) pnpair_set_rho_budget(rho_budget);
    pnpair_set_threads(threads);
    pnpair_set_timestamps(!no_timestamp);

    char* out = nullptr;
    if (*field_info) {
      Field f(q, m, modulus);
      check(pnpair_field_info_json(f.get(), &out));
    } else if (*factor) {
      if (q && m) {
        check(pnpair_factor_qm1_json(log2_of_q(q), m, &out));
      } else if (!factor_n.empty() && !q && !m) {
        check(pnpair_factor_json(factor_n.c_str(), &out));
      } else {
        throw CLI::ValidationError("factor", "give either n or both --q and --m");
      }
    } else if (*xm1) {
      check(pnpair_xm1_json(log2_of_q(q), m, list_factors, &out));
    } else if (*bound) {
      check(pnpair_bound_json(log2_of_q(q), m, opt_cstr(constant), &out));
    } else if (*sieve) {
      if (sieve_auto && (!d_spec.empty() || !g_spec.empty()))
        throw CLI::ValidationError("sieve", "--auto excludes --d and --g");
      if (!sieve_auto && d_spec.empty() && g_spec.empty())
        throw CLI::ValidationError("sieve", "give --d and/or --g, or --auto");
      const char* d = sieve_auto ? nullptr : (d_spec.empty() ? "q^m-1" : d_spec.c_str());
      const char* g = sieve_auto ? nullptr : (g_spec.empty() ? "1" : g_spec.c_str());
      check(pnpair_sieve_json(log2_of_q(q), m, d, g, &out));
    } else if (*lemma53) {
      check(pnpair_lemma53_json(log2_of_q(q), opt_cstr(a_text), &out));
    } else if (*lemma56) {
      check(pnpair_lemma56_json(log2_of_q(q), m, &out));
    } else if (*count_m) {
      Field f(q, m, modulus);
      const auto q5 = f.quintuple(quintuple_text);
      check(pnpair_count_m_json(f.get(), q5.data(), e1.c_str(), g1.c_str(), e2.c_str(), g2.c_str(), &out));
    } else if (*search) {
      Field f(q, m, modulus);
      if (!exhaustive && !budget && resume_path.empty())
        throw CLI::ValidationError("search", "give --exhaustive or --budget N");
      sopts.exhaustive = budget ? 0 : 1;
      sopts.budget = budget;
      sopts.seed = seed;
      parse_shard(shard, sopts.shard_index, sopts.shard_total);
      sopts.threads = threads;
      sopts.emit_exceptional = emit_exceptional;
      sopts.exhaustive_cap = cap;
      sopts.checkpoint_path = opt_cstr(checkpoint_path);
      sopts.checkpoint_interval_s = checkpoint_interval;
      sopts.stop_after = stop_after;
      if (!alpha_text.empty()) {
        sopts.has_alpha = 1;
        sopts.alpha = f.element(alpha_text);
      }
      std::uint64_t exceptional_count = 0;
      if (!resume_path.empty())
        check(pnpair_resume_json(f.get(), resume_path.c_str(), &sopts, &out, &exceptional_count));
      else
        check(pnpair_search_json(f.get(), &sopts, &out, &exceptional_count));
      print_owned(out);
      return exceptional_count ? kExitExceptional : kExitOk;
    } else if (*verify) {
      Field f(q, m, modulus);
      const auto q5 = f.quintuple(quintuple_text);
      const bool has_alpha = !alpha_text.empty();
      const std::uint64_t alpha = has_alpha ? f.element(alpha_text) : 0;
      int confirmed = 0;
      check(pnpair_verify_counterexample_json(f.get(), q5.data(), has_alpha, alpha, &out, &confirmed));
      print_owned(out);
      return confirmed ? kExitExceptional : kExitOk;
    } else if (*reproduce) {
      check(pnpair_reproduce_tables(opt_cstr(data_dir), table, format == "csv", &out));
    } else if (*wbound) {
      check(pnpair_check_wbound_json(n_max, root, constant.c_str(), odd_only, &out));
    } else if (*merge) {
      std::vector<std::string> texts;
      for (const auto& path : report_files) texts.push_back(read_file(path));
      std::vector<const char*> ptrs;
      for (const auto& t : texts) ptrs.push_back(t.c_str());
      std::uint64_t exceptional_count = 0;
      check(pnpair_merge_reports_json(ptrs.data(), ptrs.size(), &out, &exceptional_count));
      print_owned(out);
      return exceptional_count ? kExitExceptional : kExitOk;
    }
    print_owned(out);
    return kExitOk;
  } catch (const Failure& f) {
    std::cerr << "pnpair: " << pnpair_status_string(f.status) << ": " << pnpair_last_error() << '\n';
    return exit_code_for(f.status);
  } catch (const CLI::Error& e) {
    std::cerr << "pnpair: " << e.what() << '\n';
    return kExitUsage;
  }
}
