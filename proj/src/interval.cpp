#include "davies/interval.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace davies {

IntervalValue::IntervalValue(Rational lower, Rational upper)
    : lo(std::move(lower)), hi(std::move(upper)) {
  if (lo > hi) throw std::invalid_argument("interval endpoints out of order");
}

IntervalValue operator-(const IntervalValue& a) { return {-a.hi, -a.lo}; }

IntervalValue operator+(const IntervalValue& a, const IntervalValue& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

IntervalValue operator-(const IntervalValue& a, const IntervalValue& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

IntervalValue operator*(const IntervalValue& a, const IntervalValue& b) {
  const Rational c1 = a.lo * b.lo;
  const Rational c2 = a.lo * b.hi;
  const Rational c3 = a.hi * b.lo;
  const Rational c4 = a.hi * b.hi;
  return {std::min(std::min(c1, c2), std::min(c3, c4)),
          std::max(std::max(c1, c2), std::max(c3, c4))};
}

IntervalValue operator/(const IntervalValue& a, const IntervalValue& b) {
  if (b.contains_zero()) {
    throw std::domain_error("interval division by an interval containing zero");
  }
  const IntervalValue inv{1 / b.hi, 1 / b.lo};
  return a * inv;
}

bool intersects(const IntervalValue& a, const IntervalValue& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

namespace {

Integer floor_div(const Integer& n, const Integer& d) {
  Integer q = n / d;
  if (n % d != 0 && (n < 0) != (d < 0)) --q;
  return q;
}

// Largest dyadic p/2^prec that is <= r.
Rational dyadic_floor(const Rational& r, std::size_t prec) {
  const Integer scale = Integer(1) << prec;
  const Rational scaled = r * scale;
  return Rational(floor_div(numerator(scaled), denominator(scaled)), scale);
}

Rational dyadic_ceil(const Rational& r, std::size_t prec) {
  return -dyadic_floor(-r, prec);
}

// Smallest prec with 2^-prec <= bound.
std::size_t dyadic_precision_for(const Rational& bound) {
  Integer lhs = numerator(bound);
  const Integer rhs = denominator(bound);
  std::size_t prec = 0;
  while (lhs < rhs) {
    lhs <<= 1;
    ++prec;
  }
  return prec;
}

}  // namespace

IntervalValue exp_enclosure(const Rational& x, const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("exp_enclosure requires eps > 0");
  if (x == 0) return IntervalValue(Rational(1));

  const Rational ax = abs(x);
  const Integer cap_exp = ceil_of_abs(x);
  if (cap_exp > 1024) throw std::invalid_argument("exp_enclosure argument too large");
  // e^|x| <= 4^(ceil|x|), so the tail after M terms is at most
  // |x|^(M+1)/(M+1)! * 4^(ceil|x|).
  const Integer cap = Integer(1) << (2 * cap_exp.convert_to<std::size_t>());

  const Rational budget = eps / 4;
  Rational tail = ax * cap;
  std::size_t terms = 0;
  while (tail > budget) {
    ++terms;
    tail = tail * ax / Integer(terms + 1);
  }

  Rational sum = 1;
  Rational term = 1;
  for (std::size_t m = 1; m <= terms; ++m) {
    term = term * x / Integer(m);
    sum += term;
  }

  const std::size_t prec = dyadic_precision_for(eps / 8);
  IntervalValue out(dyadic_floor(sum - tail, prec), dyadic_ceil(sum + tail, prec));
  if (out.width() > eps) throw std::logic_error("exp_enclosure width overran eps");
  return out;
}

namespace {

IntervalValue cofactor_det(const IntervalMatrix& m, std::size_t top,
                           std::vector<std::size_t>& cols) {
  if (cols.size() == 1) return m[top][cols[0]];
  IntervalValue acc;
  for (std::size_t idx = 0; idx < cols.size(); ++idx) {
    const std::size_t c = cols[idx];
    const IntervalValue& pivot = m[top][c];
    if (pivot.lo == 0 && pivot.hi == 0) continue;
    cols.erase(cols.begin() + idx);
    const IntervalValue sub = cofactor_det(m, top + 1, cols);
    cols.insert(cols.begin() + idx, c);
    const IntervalValue t = pivot * sub;
    acc = (idx % 2 == 0) ? acc + t : acc - t;
  }
  return acc;
}

std::optional<IntervalValue> elimination_det(IntervalMatrix a) {
  const std::size_t n = a.size();
  int sign = 1;
  IntervalValue prev(Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = n;
    for (std::size_t r = k; r < n; ++r) {
      if (!a[r][k].contains_zero()) {
        piv = r;
        break;
      }
    }
    if (piv == n) return std::nullopt;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  const IntervalValue det = a[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

}  // namespace

std::optional<IntervalValue> interval_det(const IntervalMatrix& m, std::size_t max_dim) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("interval_det requires a square matrix");
  }
  if (n > max_dim) throw std::invalid_argument("interval_det dimension above configured maximum");
  if (n == 0) return IntervalValue(Rational(1));
  if (n <= 6) {
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;
    return cofactor_det(m, 0, cols);
  }
  return elimination_det(m);
}

}  // namespace davies
