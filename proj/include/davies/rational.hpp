#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace davies {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always in lowest terms with a positive
/// denominator; arithmetic never rounds.
using Rational = boost::multiprecision::cpp_rational;

/// Canonical text form: "p/q" in lowest terms, "p" alone when q == 1.
std::string to_string(const Rational& r);

/// Parses "p" or "p/q" (optional sign on p, q a positive integer literal).
/// Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(const std::string& text);

/// Division with an explicit zero-divisor error instead of boost's.
Rational rational_div(const Rational& a, const Rational& b);

/// Smallest integer >= |r|.
Integer ceil_of_abs(const Rational& r);

}  // namespace davies
