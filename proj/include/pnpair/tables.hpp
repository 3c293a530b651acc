#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pnpair/arith_factor.hpp"
#include "pnpair/bounds_sieve.hpp"

namespace pnpair {

// Directory holding the shipped CSV tables: $PNPAIR_DATA, else the build-time default.
std::string default_data_dir();

// One printed row of a sieve table. Numeric columns stay as printed text.
struct TableRow {
  std::string q_text;
  unsigned k = 0;  // q = 2^k
  unsigned m = 0;
  std::string d;
  long n_paper = 0;
  std::string g;
  long k_paper = 0;
  std::string S_paper;
  std::string lhs_paper;
  std::string rhs_paper;
};

std::vector<TableRow> load_table_csv(const std::string& path);

// Half a unit in the last printed digit for scientific printings, else 0.5.
mpq_class printed_tolerance(std::string_view printed);

constexpr double kSRelativeTolerance = 5e-3;

struct RowReport {
  TableRow row;
  SieveEvaluation eval;
  std::size_t n_calc = 0;
  std::size_t k_calc = 0;
  bool n_matches = false;
  bool k_matches = false;
  bool matches_S = false;
  bool matches_rhs = false;
  bool condition_passes = false;
  std::vector<std::string> notes;

  bool flagged() const { return !(n_matches && k_matches && matches_S && matches_rhs && condition_passes); }
};

struct TableReport {
  int table_id = 0;
  std::vector<RowReport> rows;
  std::size_t matched_S = 0, matched_rhs = 0, passing = 0, flagged = 0;
};

TableReport reproduce_table(int table_id, const std::vector<TableRow>& rows, const FactorOptions& opts = {},
                            unsigned threads = 1);

struct ExceptionPair {
  std::string theorem;
  unsigned k = 0;
  unsigned m = 0;
};
std::vector<ExceptionPair> load_exceptions_csv(const std::string& path);

struct CounterexampleRow {
  unsigned k = 0, m = 0;
  std::string modulus;
  std::string a, b, c, d, e;
  std::uint64_t checked_paper = 0, exceptional_paper = 0;
};
std::vector<CounterexampleRow> load_counterexamples_csv(const std::string& path);

struct ExceptionCheck {
  ExceptionPair pair;
  PlainCondition plain;
};

struct ReproduceAllReport {
  TableReport table1, table2;
  std::vector<ExceptionCheck> exceptions;
  std::size_t exceptions_failing_plain = 0;
  // The sieve claim for (q, m) = (32, 31).
  IntFactorization order_32_31;
  std::optional<AutoSieveResult> sieve_32_31;
};

ReproduceAllReport reproduce_all(const std::string& data_dir, const FactorOptions& opts = {}, unsigned threads = 1);

unsigned log2_exact(const mpz_class& q);

}  // namespace pnpair
