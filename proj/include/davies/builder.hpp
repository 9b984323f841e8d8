#pragma once

#include "davies/pairfunction.hpp"
#include "davies/theta.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace davies {

struct PairCertificate {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t cutoff = 0;
  Rational expected;
  Rational sum;
  std::size_t horizon = 0;
  bool ok = false;
  std::string failure;  // empty when ok
};

struct VerifyReport {
  bool ok = true;
  std::size_t horizon = 0;
  std::size_t pairs_checked = 0;
  std::vector<PairCertificate> certificates;
};

/// A finite representation f(x_i, x_j) = sum_n g(i, n) h(j, n), grown one
/// point at a time. Each new point contributes one g row (its first
/// coordinate fixed against the existing points) and one h row (second
/// coordinate fixed, the diagonal included), produced by runs that take
/// every previously created row as arguments. That makes all products
/// g(i, n) h(j, n) vanish beyond the recorded pair cutoff, so every sum
/// is finite and checkable exactly.
class Representation {
 public:
  explicit Representation(PairFunction f);

  Representation(const Representation&) = delete;
  Representation& operator=(const Representation&) = delete;
  Representation(Representation&&) = default;
  Representation& operator=(Representation&&) = default;

  void add_point(Point point);
  void add_point(const std::string& label);
  void add_point(const std::string& label, const Rational& payload);
  void add_point(const std::string& label, E0Point payload);

  std::size_t point_count() const { return points_.size(); }
  const PointList& points() const { return points_; }
  const PairFunction& function() const { return f_; }
  std::optional<std::size_t> position_of(const std::string& label) const;

  Rational eval_g(std::size_t i, std::size_t n);
  Rational eval_h(std::size_t i, std::size_t n);
  const RowPtr& g_row(std::size_t i) const;
  const RowPtr& h_row(std::size_t i) const;

  /// Index beyond which every product g(i, n) h(j, n) vanishes.
  std::size_t pair_cutoff(std::size_t i, std::size_t j);

  PairCertificate verify_pair(std::size_t i, std::size_t j, std::size_t stress_horizon);
  VerifyReport verify_all(std::size_t stress_horizon);
  SReport check_S(std::size_t required_stages);

  std::optional<std::size_t> last_nonzero_index(std::size_t i, std::size_t j);
  std::set<std::size_t> active_index_set(const std::vector<std::size_t>& rows,
                                         const std::vector<std::size_t>& cols);

  std::size_t max_recorded_milestone() const;
  /// Default stress horizon: 4 x the largest recorded milestone.
  std::size_t default_stress_horizon() const;

  /// Forces every row to its canonical stage count and every pair cutoff,
  /// making the recorded state independent of prior evaluation order.
  void canonicalize();

 private:
  void require_position(std::size_t i) const;

  PairFunction f_;
  PointList points_;
  std::map<std::string, std::size_t> index_;
  std::vector<RowPtr> g_rows_;
  std::vector<RowPtr> h_rows_;
};

}  // namespace davies
