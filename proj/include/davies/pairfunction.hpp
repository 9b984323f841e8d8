#pragma once

#include "davies/point.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace davies {

/// Exact oracle f(i, j) over positions of a point list. Instances are
/// immutable; the descriptor regenerates every built-in deterministically.
class PairFunction {
 public:
  static PairFunction product();
  static PairFunction zero();
  static PairFunction rand_table(std::uint64_t seed, std::size_t size);
  static PairFunction exp_series(std::size_t order);
  static PairFunction e0_indicator();
  static PairFunction from_table(std::vector<std::vector<Rational>> entries);

  const std::string& descriptor() const { return descriptor_; }

  /// Throws std::out_of_range for bad positions and std::invalid_argument
  /// when a point lacks the payload this function needs.
  Rational eval(const PointList& points, std::size_t i, std::size_t j) const;

  /// Table-backed functions must inline their entries when serialized;
  /// descriptor-backed ones are regenerated from the descriptor alone.
  bool table_backed() const;
  const std::vector<std::vector<Rational>>& table() const { return table_; }

 private:
  enum class Kind { kProduct, kZero, kRandTable, kExpSeries, kE0, kTable };

  PairFunction(Kind kind, std::string descriptor) : kind_(kind), descriptor_(std::move(descriptor)) {}

  const Rational& rational_payload(const PointList& points, std::size_t i) const;
  const E0Point& e0_payload(const PointList& points, std::size_t i) const;

  Kind kind_;
  std::string descriptor_;
  std::vector<std::vector<Rational>> table_;
  std::size_t order_ = 0;
};

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace davies
