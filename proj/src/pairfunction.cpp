#include "davies/pairfunction.hpp"

#include <stdexcept>

namespace davies {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

E0Point make_e0_point(std::string prefix, int tail) {
  for (char c : prefix) {
    if (c != '0' && c != '1') throw std::invalid_argument("e0 prefix must be over {0,1}");
  }
  if (tail != 0 && tail != 1) throw std::invalid_argument("e0 tail must be 0 or 1");
  return E0Point{std::move(prefix), tail};
}

PairFunction PairFunction::product() { return {Kind::kProduct, "product"}; }

PairFunction PairFunction::zero() { return {Kind::kZero, "zero"}; }

PairFunction PairFunction::rand_table(std::uint64_t seed, std::size_t size) {
  PairFunction f(Kind::kRandTable,
                 "randtable:" + std::to_string(seed) + ":" + std::to_string(size));
  std::uint64_t state = seed;
  f.table_.resize(size);
  for (auto& row : f.table_) {
    row.reserve(size);
    for (std::size_t j = 0; j < size; ++j) {
      const auto num = static_cast<long>(splitmix64(state) % 19) - 9;
      const auto den = static_cast<long>(splitmix64(state) % 9) + 1;
      row.emplace_back(Integer(num), Integer(den));
    }
  }
  return f;
}

PairFunction PairFunction::exp_series(std::size_t order) {
  if (order > 64) throw std::invalid_argument("expseries order above 64");
  PairFunction f(Kind::kExpSeries, "expseries:" + std::to_string(order));
  f.order_ = order;
  return f;
}

PairFunction PairFunction::e0_indicator() { return {Kind::kE0, "e0"}; }

PairFunction PairFunction::from_table(std::vector<std::vector<Rational>> entries) {
  for (const auto& row : entries) {
    if (row.size() != entries.size()) {
      throw std::invalid_argument("function table must be square");
    }
  }
  PairFunction f(Kind::kTable, "table");
  f.table_ = std::move(entries);
  return f;
}

bool PairFunction::table_backed() const { return kind_ == Kind::kTable; }

const Rational& PairFunction::rational_payload(const PointList& points, std::size_t i) const {
  const auto* r = std::get_if<Rational>(&points.at(i).payload);
  if (!r) {
    throw std::invalid_argument("function '" + descriptor_ + "' needs a rational payload on point '" +
                                points.at(i).label + "'");
  }
  return *r;
}

const E0Point& PairFunction::e0_payload(const PointList& points, std::size_t i) const {
  const auto* e = std::get_if<E0Point>(&points.at(i).payload);
  if (!e) {
    throw std::invalid_argument("function '" + descriptor_ + "' needs a binary-sequence payload on point '" +
                                points.at(i).label + "'");
  }
  return *e;
}

Rational PairFunction::eval(const PointList& points, std::size_t i, std::size_t j) const {
  if (i >= points.size() || j >= points.size()) {
    throw std::out_of_range("point position out of range");
  }
  switch (kind_) {
    case Kind::kProduct:
      return rational_payload(points, i) * rational_payload(points, j);
    case Kind::kZero:
      return Rational(0);
    case Kind::kRandTable:
    case Kind::kTable: {
      if (i >= table_.size() || j >= table_.size()) {
        throw std::out_of_range("function table is " + std::to_string(table_.size()) +
                                "x" + std::to_string(table_.size()) +
                                ", position (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") is outside it");
      }
      return table_[i][j];
    }
    case Kind::kExpSeries: {
      const Rational t = rational_payload(points, i) * rational_payload(points, j);
      Rational sum = 1;
      Rational term = 1;
      for (std::size_t m = 1; m <= order_; ++m) {
        term = term * t / Integer(m);
        sum += term;
      }
      return sum;
    }
    case Kind::kE0: {
      return e0_payload(points, i).tail == e0_payload(points, j).tail ? Rational(1)
                                                                      : Rational(0);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace davies
