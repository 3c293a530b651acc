#include "pnpair/tables.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "pnpair/errors.hpp"

#ifndef PNPAIR_DEFAULT_DATA_DIR
#define PNPAIR_DEFAULT_DATA_DIR "data"
#endif

namespace pnpair {

namespace {

std::vector<std::vector<std::string>> read_csv(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != columns)
      fail(Errc::Io, path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) + " columns");
    rows.push_back(std::move(cells));
  }
  return rows;
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(Errc::Io, "bad integer for " + what + ": '" + s + "'");
  }
}

mpq_class abs_q(const mpq_class& v) { return sgn(v) < 0 ? mpq_class(-v) : v; }

RowReport reproduce_row(const TableRow& row, const FactorOptions& opts) {
  RowReport rep;
  rep.row = row;
  const IntFactorization order = factor_qm_minus_1(row.k, row.m, opts);
  const XmStructure xs = xm_structure(row.k, row.m);
  const SieveChoice choice = make_sieve_choice(order, xs, row.d, row.g);
  rep.eval = sieve_eval(choice, row.k, row.m);
  rep.n_calc = choice.remaining_primes.size();
  rep.k_calc = choice.remaining_degrees.size();
  rep.n_matches = static_cast<long>(rep.n_calc) == row.n_paper;
  rep.k_matches = static_cast<long>(rep.k_calc) == row.k_paper;
  if (!rep.n_matches)
    rep.notes.push_back("n: printed " + std::to_string(row.n_paper) + ", recomputed " + std::to_string(rep.n_calc));
  if (!rep.k_matches)
    rep.notes.push_back("k: printed " + std::to_string(row.k_paper) + ", recomputed " + std::to_string(rep.k_calc));
  rep.condition_passes = rep.eval.passes;
  if (!rep.eval.theta_positive) {
    rep.notes.push_back("theta <= 0 for this choice; sieve bound undefined");
    return rep;
  }
  const mpq_class S_paper = parse_decimal(row.S_paper);
  rep.matches_S = abs_q(rep.eval.S - S_paper) <= mpq_class(1, 200) * abs_q(S_paper);
  if (!rep.matches_S) rep.notes.push_back("S differs from printed value by more than 0.5%");
  const mpq_class rhs_paper = parse_decimal(row.rhs_paper);
  rep.matches_rhs = abs_q(rep.eval.rhs - rhs_paper) <= printed_tolerance(row.rhs_paper);
  if (!rep.matches_rhs) rep.notes.push_back("4W(d)^2 Omega(g)^2 S differs from printed bound");
  if (!rep.condition_passes) rep.notes.push_back("recomputed condition fails: q^m <= bound^2");
  return rep;
}

}  // namespace

std::string default_data_dir() {
  if (const char* env = std::getenv("PNPAIR_DATA"); env && *env) return env;
  return PNPAIR_DEFAULT_DATA_DIR;
}

unsigned log2_exact(const mpz_class& q) {
  if (q < 2) fail(Errc::InvalidArgument, "q must be a power of two >= 2, got " + q.get_str());
  const std::size_t bits = mpz_sizeinbase(q.get_mpz_t(), 2);
  if (mpz_scan1(q.get_mpz_t(), 0) != bits - 1)
    fail(Errc::InvalidArgument, "q must be a power of two, got " + q.get_str());
  return static_cast<unsigned>(bits - 1);
}

std::vector<TableRow> load_table_csv(const std::string& path) {
  std::vector<TableRow> out;
  for (const auto& c : read_csv(path, 9)) {
    TableRow r;
    r.q_text = c[0];
    r.k = log2_exact(mpz_class(c[0]));
    r.m = static_cast<unsigned>(to_long(c[1], "m"));
    r.d = c[2];
    r.n_paper = to_long(c[3], "n");
    r.g = c[4];
    r.k_paper = to_long(c[5], "k");
    r.S_paper = c[6];
    r.lhs_paper = c[7];
    r.rhs_paper = c[8];
    out.push_back(std::move(r));
  }
  return out;
}

mpq_class printed_tolerance(std::string_view printed) {
  const std::size_t e = printed.find_first_of("eE");
  if (e == std::string_view::npos) return mpq_class(1, 2);
  const std::string_view mant = printed.substr(0, e);
  const std::size_t dot = mant.find('.');
  const long decimals = dot == std::string_view::npos ? 0 : static_cast<long>(mant.size() - dot - 1);
  const long exp10 = std::stol(std::string(printed.substr(e + 1))) - decimals;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  mpq_class r = exp10 >= 0 ? mpq_class(scale, 2) : mpq_class(1, 2 * scale);
  r.canonicalize();
  return r;
}

TableReport reproduce_table(int table_id, const std::vector<TableRow>& rows, const FactorOptions& opts,
                            unsigned threads) {
  TableReport rep;
  rep.table_id = table_id;
  rep.rows.resize(rows.size());
  std::vector<std::string> errors(rows.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      try {
        rep.rows[i] = reproduce_row(rows[i], opts);
      } catch (const Error& e) {
        errors[i] = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      rep.rows[i].row = rows[i];
      rep.rows[i].notes.push_back("error: " + errors[i]);
    }
    const RowReport& r = rep.rows[i];
    rep.matched_S += r.matches_S;
    rep.matched_rhs += r.matches_rhs;
    rep.passing += r.condition_passes;
    rep.flagged += r.flagged();
  }
  return rep;
}

std::vector<ExceptionPair> load_exceptions_csv(const std::string& path) {
  std::vector<ExceptionPair> out;
  for (const auto& c : read_csv(path, 3))
    out.push_back({c[0], log2_exact(mpz_class(c[1])), static_cast<unsigned>(to_long(c[2], "m"))});
  return out;
}

std::vector<CounterexampleRow> load_counterexamples_csv(const std::string& path) {
  std::vector<CounterexampleRow> out;
  for (const auto& c : read_csv(path, 10)) {
    CounterexampleRow r;
    r.k = log2_exact(mpz_class(c[0]));
    r.m = static_cast<unsigned>(to_long(c[1], "m"));
    r.modulus = c[2];
    r.a = c[3];
    r.b = c[4];
    r.c = c[5];
    r.d = c[6];
    r.e = c[7];
    r.checked_paper = static_cast<std::uint64_t>(to_long(c[8], "checked"));
    r.exceptional_paper = static_cast<std::uint64_t>(to_long(c[9], "exceptional"));
    out.push_back(std::move(r));
  }
  return out;
}

ReproduceAllReport reproduce_all(const std::string& data_dir, const FactorOptions& opts, unsigned threads) {
  ReproduceAllReport rep;
  rep.table1 = reproduce_table(1, load_table_csv(data_dir + "/table1.csv"), opts, threads);
  rep.table2 = reproduce_table(2, load_table_csv(data_dir + "/table2.csv"), opts, threads);
  for (const ExceptionPair& p : load_exceptions_csv(data_dir + "/exceptions.csv")) {
    ExceptionCheck c{p, plain_condition_full(p.k, p.m, opts)};
    rep.exceptions_failing_plain += !c.plain.passes;
    rep.exceptions.push_back(std::move(c));
  }
  rep.order_32_31 = factor_qm_minus_1(5, 31, opts);
  rep.sieve_32_31 = auto_sieve(rep.order_32_31, xm_structure(5, 31));
  return rep;
}

}  // namespace pnpair
