#pragma once

#include "davies/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace davies {

/// Closed interval with exact rational endpoints. Every operation returns
/// an enclosure of the exact real result.
struct IntervalValue {
  Rational lo;
  Rational hi;

  IntervalValue() : lo(0), hi(0) {}
  explicit IntervalValue(const Rational& point) : lo(point), hi(point) {}
  IntervalValue(Rational lower, Rational upper);

  bool is_point() const { return lo == hi; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool contains(const Rational& v) const { return lo <= v && hi >= v; }
  Rational width() const { return hi - lo; }
};

IntervalValue operator-(const IntervalValue& a);
IntervalValue operator+(const IntervalValue& a, const IntervalValue& b);
IntervalValue operator-(const IntervalValue& a, const IntervalValue& b);
IntervalValue operator*(const IntervalValue& a, const IntervalValue& b);

/// Throws std::domain_error if the divisor contains zero.
IntervalValue operator/(const IntervalValue& a, const IntervalValue& b);

bool intersects(const IntervalValue& a, const IntervalValue& b);

/// Certified enclosure of e^x. A Taylor partial sum is widened by an
/// explicit rational tail bound |x|^(M+1)/(M+1)! * 4^(ceil|x|), then the
/// endpoints are rounded outward to dyadic rationals so that downstream
/// determinant arithmetic stays on a common small denominator.
/// Guarantees e^x in [lo, hi] and hi - lo <= eps.
IntervalValue exp_enclosure(const Rational& x, const Rational& eps);

inline constexpr std::size_t kMaxDetDim = 8;

using IntervalMatrix = std::vector<std::vector<IntervalValue>>;

/// Enclosure of det(A) valid for every real matrix A enclosed entrywise by
/// m. Cofactor expansion up to 6x6; fraction-free elimination above that,
/// which needs every pivot interval to exclude zero and reports nullopt
/// (indeterminate, not singular) when none is available. Exact on matrices
/// of point intervals. Dimension above max_dim is an error.
std::optional<IntervalValue> interval_det(const IntervalMatrix& m,
                                          std::size_t max_dim = kMaxDetDim);

}  // namespace davies
