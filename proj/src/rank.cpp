#include "davies/rank.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace davies {

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& entries) {
  RationalMatrix m(entries.size(), entries.empty() ? 0 : entries[0].size());
  for (std::size_t r = 0; r < entries.size(); ++r) {
    if (entries[r].size() != m.cols) {
      throw std::invalid_argument("ragged matrix rows");
    }
    for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = entries[r][c];
  }
  return m;
}

std::size_t exact_rank(const RationalMatrix& m) {
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  if (rows == 0 || cols == 0) return 0;

  // Scaling a row by its denominators' lcm preserves the row space.
  std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < cols; ++c) l = lcm(l, denominator(m.at(r, c)));
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational& v = m.at(r, c);
      a[r][c] = numerator(v) * (l / denominator(v));
    }
  }

  std::size_t rank = 0;
  Integer prev = 1;
  const std::size_t steps = std::min(rows, cols);
  while (rank < steps) {
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = rank; r < rows && pr == rows; ++r) {
      for (std::size_t c = rank; c < cols; ++c) {
        if (a[r][c] != 0) {
          pr = r;
          pc = c;
          break;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[rank], a[pr]);
    if (pc != rank) {
      for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][rank], a[r][pc]);
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = rank + 1; c < cols; ++c) {
        a[r][c] = (a[rank][rank] * a[r][c] - a[r][rank] * a[rank][c]) / prev;
      }
      a[r][rank] = 0;
    }
    prev = a[rank][rank];
    ++rank;
  }
  return rank;
}

Certificate certify_exp_matrix_nonsingular(const std::vector<Rational>& a,
                                           const std::vector<Rational>& b,
                                           const Rational& initial_eps,
                                           unsigned max_refinements) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("empty exponent vectors");
  if (b.size() != n) throw std::invalid_argument("exponent vectors differ in length");
  if (n > kMaxDetDim) {
    throw std::invalid_argument("matrix dimension above the determinant maximum");
  }
  if (initial_eps <= 0) throw std::invalid_argument("initial eps must be positive");
  if (std::set<Rational>(a.begin(), a.end()).size() != n) {
    throw std::invalid_argument("left exponents must be pairwise distinct");
  }
  if (std::set<Rational>(b.begin(), b.end()).size() != n) {
    throw std::invalid_argument("right exponents must be pairwise distinct");
  }

  Certificate cert;
  Rational eps = initial_eps;
  for (unsigned attempt = 0;; ++attempt) {
    IntervalMatrix m(n, std::vector<IntervalValue>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = exp_enclosure(a[i] * b[j], eps);
    }
    cert.eps_used = eps;
    cert.refinements = attempt;
    cert.det = interval_det(m);
    if (cert.det && !cert.det->contains_zero()) {
      cert.verdict = CertVerdict::kNonsingularCertified;
      return cert;
    }
    if (attempt == max_refinements) break;
    eps /= 2;
  }
  cert.verdict = CertVerdict::kIndeterminate;
  return cert;
}

RationalMatrix grid_matrix(const PairFunction& f, const PointList& points,
                           const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols) {
  RationalMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      m.at(r, c) = f.eval(points, rows.at(r), cols.at(c));
    }
  }
  return m;
}

LowerBoundReport lowerbound_check(Representation& rep,
                                  const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols) {
  LowerBoundReport report;
  const auto active = rep.active_index_set(rows, cols);
  report.active_indices.assign(active.begin(), active.end());
  report.active_count = active.size();
  report.grid_rank = exact_rank(grid_matrix(rep.function(), rep.points(), rows, cols));
  report.ok = report.active_count >= report.grid_rank;
  return report;
}

}  // namespace davies
