#include "davies/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace davies {

namespace {

bool is_integer_literal(const std::string& s, bool allow_sign) {
  std::size_t i = 0;
  if (allow_sign && i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Integer integer_of(const std::string& s) {
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

std::string to_string(const Rational& r) {
  std::string s = numerator(r).str();
  const Integer den = denominator(r);
  if (den != 1) {
    s += '/';
    s += den.str();
  }
  return s;
}

Rational parse_rational(const std::string& text) {
  const std::string t = trimmed(text);
  const std::size_t slash = t.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_literal(t, true)) {
      throw std::invalid_argument("not a rational literal: '" + text + "'");
    }
    return Rational(integer_of(t));
  }
  const std::string num = trimmed(t.substr(0, slash));
  const std::string den = trimmed(t.substr(slash + 1));
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
  Integer d = integer_of(den);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
  }
  return Rational(integer_of(num), d);
}

Rational rational_div(const Rational& a, const Rational& b) {
  if (b == 0) throw std::domain_error("rational division by zero");
  return a / b;
}

Integer ceil_of_abs(const Rational& r) {
  const Integer p = abs(numerator(r));
  const Integer q = denominator(r);
  return (p + q - 1) / q;
}

}  // namespace davies
