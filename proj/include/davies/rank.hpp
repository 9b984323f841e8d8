#pragma once

#include "davies/builder.hpp"
#include "davies/interval.hpp"
#include "davies/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace davies {

struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;  // row-major

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& entries);

  Rational& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Exact rank over the rationals (fraction-free elimination on integers
/// after clearing each row's denominators).
std::size_t exact_rank(const RationalMatrix& m);

enum class CertVerdict { kNonsingularCertified, kIndeterminate };

struct Certificate {
  CertVerdict verdict = CertVerdict::kIndeterminate;
  Rational eps_used;                 // entry enclosure width at the last attempt
  unsigned refinements = 0;          // halvings performed
  std::optional<IntervalValue> det;  // determinant enclosure from the last attempt
};

/// Certifies det(e^{a_i b_j}) != 0 by interval evidence: entrywise
/// enclosures of width eps, a determinant enclosure, and refinement by
/// halving eps while the enclosure still straddles zero. Indeterminate is
/// an honest "could not certify", never a singularity claim. Requires the
/// a_i pairwise distinct and the b_j pairwise distinct.
Certificate certify_exp_matrix_nonsingular(const std::vector<Rational>& a,
                                           const std::vector<Rational>& b,
                                           const Rational& initial_eps,
                                           unsigned max_refinements);

/// Matrix [f(x_{rows[r]}, x_{cols[c]})].
RationalMatrix grid_matrix(const PairFunction& f, const PointList& points,
                           const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols);

struct LowerBoundReport {
  std::size_t active_count = 0;
  std::size_t grid_rank = 0;
  bool ok = false;  // active_count >= grid_rank
  std::vector<std::size_t> active_indices;
};

/// The representation restricted to the chosen grid factors through its
/// active index set, so that set can never be smaller than the grid rank.
LowerBoundReport lowerbound_check(Representation& rep,
                                  const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols);

}  // namespace davies
