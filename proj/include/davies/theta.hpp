#pragma once

#include "davies/rational.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace davies {

class Row;
using RowPtr = std::shared_ptr<Row>;

/// A coefficient sequence produced by one run of the stage construction.
///
/// The run receives a finite target vector f, argument rows g(0..), h(0..)
/// with lh(h) == lh(f), and builds its values stage by stage. Stage k
/// records a milestone n_k with value(n_k) == 1; when k is inside dom(f)
/// the stage also places a correcting value so that
/// sum_{l <= n_k} value(l) * h(k)(l) == f(k). New indices are chosen to
/// avoid the supports of the argument rows seen so far and the columns
/// x_m of the pairing family, which is what keeps distinct runs almost
/// disjoint.
///
/// Evaluation is lazy and memoized: the cache only ever grows, and the
/// values are a pure function of (f, g, h), never of the query order.
class Row {
 public:
  Row(const Row&) = delete;
  Row& operator=(const Row&) = delete;

  /// Value at index i, running further stages on demand.
  const Rational& value(std::size_t i);
  bool in_support(std::size_t i) { return value(i) != 0; }

  /// Runs one more stage of the construction.
  void advance_stage();
  void ensure_stages(std::size_t count);
  /// Extends the cache to cover indices [0, length).
  void ensure_length(std::size_t length);

  /// Milestone n_k, running stages on demand.
  std::size_t milestone(std::size_t k);

  std::size_t stage_count() const { return milestones_.size(); }
  std::size_t cached_length() const { return values_.size(); }
  const std::vector<std::size_t>& milestones() const { return milestones_; }
  const std::vector<Rational>& cached_values() const { return values_; }

  const std::vector<Rational>& target() const { return f_; }
  const std::vector<RowPtr>& g_args() const { return g_args_; }
  const std::vector<RowPtr>& h_args() const { return h_args_; }
  const std::string& label() const { return label_; }

  /// Overwrites an already cached value in place. This deliberately breaks
  /// the run invariants; it exists so tests can prove the verification
  /// reports catch corruption. Throws if index i is not cached yet.
  void corrupt_value(std::size_t i, const Rational& v);

 private:
  friend RowPtr theta_new(std::vector<Rational> f, std::vector<RowPtr> g,
                          std::vector<RowPtr> h, std::string label);

  Row(std::vector<Rational> f, std::vector<RowPtr> g, std::vector<RowPtr> h,
      std::string label);

  /// Whether candidate index p collides with supp g(m), supp h(m), or x_m
  /// for some m < bound_count.
  bool collides(std::size_t p, std::size_t bound_count);

  std::vector<Rational> f_;
  std::vector<RowPtr> g_args_;
  std::vector<RowPtr> h_args_;
  std::string label_;
  std::vector<Rational> values_;
  std::vector<std::size_t> milestones_;
};

/// Starts a run. Requires lh(h) == lh(f) and non-null argument rows.
RowPtr theta_new(std::vector<Rational> f, std::vector<RowPtr> g = {},
                 std::vector<RowPtr> h = {}, std::string label = "");

/// Number of stages that pin down every interaction a run was created
/// with: one per target entry plus argument row, and at least one.
std::size_t canonical_stage_count(const Row& row);

struct RunIssue {
  int conclusion = 0;  // 1..5
  std::string detail;
};

struct RunReport {
  bool ok = true;
  std::size_t horizon = 0;
  std::size_t stages_checked = 0;
  std::vector<RunIssue> issues;
};

/// Checks the run conclusions on row up to an index horizon:
/// (1) each target value is met at its milestone and the products
///     value(l) * h(k)(l) vanish beyond it,
/// (2) supp(row) meets supp h(m) only within [0, n_m],
/// (3) likewise for g(m),
/// (4) likewise for the column x_m,
/// (5) every milestone carries value 1, with at least min_stages stages.
/// min_stages == 0 means the canonical stage count.
RunReport check_run_conclusions(Row& row, std::size_t horizon,
                                    std::size_t min_stages = 0);

/// Rows intended to satisfy the support discipline jointly: pairwise
/// almost disjoint (also against every column x_n), each equal to 1
/// infinitely often.
struct SPair {
  std::vector<RowPtr> g_rows;
  std::vector<RowPtr> h_rows;
};

struct SPairOverlap {
  std::string first;
  std::string second;
  std::size_t bound = 0;
  std::vector<std::size_t> shared_support;  // complete below bound
};

struct SIssue {
  std::string detail;
};

struct SReport {
  bool ok = true;
  std::size_t required_stages = 0;
  std::vector<SPairOverlap> overlaps;
  std::vector<SIssue> issues;
};

/// Checks the support discipline on the combined row list. Every row must
/// reach required_stages milestones, each of value 1. For every pair of
/// rows a constructive disjointness bound is located (the milestone the
/// later run recorded for the earlier row's argument position); the shared
/// support below it is enumerated exactly and no overlap may exist beyond
/// it up to the rows' cached lengths. Row supports are also checked
/// against the columns x_n.
SReport check_spair(const SPair& pair, std::size_t required_stages);

}  // namespace davies
