#pragma once

#include "davies/rational.hpp"

#include <string>
#include <variant>
#include <vector>

namespace davies {

/// Eventually constant binary sequence prefix + tail^omega.
struct E0Point {
  std::string prefix;  // characters '0'/'1'
  int tail = 0;        // 0 or 1

  friend bool operator==(const E0Point& a, const E0Point& b) {
    return a.prefix == b.prefix && a.tail == b.tail;
  }
};

using Payload = std::variant<std::monostate, Rational, E0Point>;

struct Point {
  std::string label;
  Payload payload;
};

using PointList = std::vector<Point>;

E0Point make_e0_point(std::string prefix, int tail);

}  // namespace davies
