#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pnpair/freeness.hpp"
#include "pnpair/gf2_field.hpp"

namespace pnpair {

struct DegeneracyFlags {
  bool is_yx = false;               // f(x) = y x
  bool is_yx2 = false;              // f(x) = y x^2
  bool is_excluded_matrix = false;  // q = 2, m odd, (a,b,c,d,e) = l(1,1,0,1,0)

  bool any() const { return is_yx || is_yx2 || is_excluded_matrix; }
};

DegeneracyFlags degeneracy(const FieldCtx& ctx, const RationalMap& f);

struct QuintupleResult {
  RationalMap q5;
  bool exceptional = false;
  std::uint64_t witness_i = 0;  // valid when !exceptional
  DegeneracyFlags flags;
};

// Runs the witness search for one quintuple: the least i coprime to q^m - 1
// with alpha^i normal and f(alpha^i) defined, primitive and normal. Holds a
// per-instance cache, so one tester must not be shared between threads.
class QuintupleTester {
 public:
  QuintupleTester(const FieldCtx& ctx, Elem alpha);
  ~QuintupleTester();
  QuintupleTester(QuintupleTester&&) noexcept;

  QuintupleResult test(const RationalMap& f);
  // An independent tester reusing the read-only tables of this one.
  QuintupleTester clone() const;

 private:
  struct Impl;
  explicit QuintupleTester(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

QuintupleResult test_quintuple(const FieldCtx& ctx, Elem alpha, const RationalMap& f);

// Re-checks one witness with the gcd normality test and exact orders.
bool verify_witness(const FieldCtx& ctx, Elem alpha, const RationalMap& f, std::uint64_t i);
// Full i-loop with the gcd normality test and exact orders, independent of
// QuintupleTester; true when no witness exists. Requires q^m <= cap.
bool verify_counterexample(const FieldCtx& ctx, Elem alpha, const RationalMap& f,
                           std::uint64_t cap = std::uint64_t{1} << 24);

// Number of valid quintuples, (q^m - 1) q^(2m) (q^(2m) - 1).
mpz_class valid_quintuple_count(unsigned n);
// Quintuple at a position of the ascending (a,b,c,d,e) enumeration; n <= 12.
RationalMap quintuple_at(unsigned n, std::uint64_t index);
std::uint64_t index_of(unsigned n, const RationalMap& f);

struct SearchOptions {
  bool exhaustive = true;
  std::uint64_t budget = 0;  // sampled mode
  std::uint64_t seed = 0;
  unsigned shard_index = 0;  // 0-based
  unsigned shard_total = 1;
  unsigned threads = 0;      // 0: hardware concurrency
  bool emit_exceptional = false;
  std::uint64_t exhaustive_cap = 64;  // largest q^m for an exhaustive run
  std::optional<Elem> alpha;
  std::string checkpoint_path;          // empty: no checkpoints
  double checkpoint_interval_s = 30.0;
  // Stop each worker after this many enumeration steps (0: run to the end);
  // the report is then marked incomplete and the checkpoint can resume it.
  std::uint64_t stop_after = 0;
};

struct FlagCounts {
  std::uint64_t yx = 0, yx2 = 0, excluded_matrix = 0;

  void add(const DegeneracyFlags& f) {
    yx += f.is_yx;
    yx2 += f.is_yx2;
    excluded_matrix += f.is_excluded_matrix;
  }
  void add(const FlagCounts& o) {
    yx += o.yx;
    yx2 += o.yx2;
    excluded_matrix += o.excluded_matrix;
  }
};

struct ExceptionalEntry {
  std::uint64_t index = 0;  // enumeration index, or draw ordinal when sampled
  RationalMap q5;
  DegeneracyFlags flags;
};

struct SearchReport {
  unsigned k = 0, m = 0;
  Gf2Modulus modulus;
  Elem alpha = 0;
  bool exhaustive = true;
  std::uint64_t checked = 0;
  std::uint64_t exceptional = 0;
  FlagCounts flagged_checked;
  FlagCounts flagged_exceptional;
  std::vector<ExceptionalEntry> exceptional_list;
  unsigned shard_index = 0, shard_total = 1;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 0;
  bool complete = true;
};

SearchReport exhaustive_search(const FieldCtx& ctx, const SearchOptions& opts);
SearchReport sampled_search(const FieldCtx& ctx, const SearchOptions& opts);
// Resumes an exhaustive run from its checkpoint file.
SearchReport resume_search(const FieldCtx& ctx, const std::string& checkpoint_path, const SearchOptions& opts);
// Sums shard reports of the same field; exceptional lists are merged by index.
SearchReport merge_reports(const std::vector<SearchReport>& parts);

}  // namespace pnpair
