#pragma once

#include "cae/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <regex>
#include <cstdint>
#include <string>

namespace cae {

// Pattern counts never wrap: cpp_int stays inline below 128 bits and
// switches to heap limbs beyond that.
using Count = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Count& c) { return c.str(); }

inline std::string to_string(const Rational& q) {
  Count num = boost::multiprecision::numerator(q);
  Count den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// log2 of an exact positive count, accurate for counts far beyond double range.
inline double log2_count(const Count& c) {
  if (c <= 0) return -INFINITY;
  const std::size_t bits = boost::multiprecision::msb(c) + 1;
  if (bits <= 60) return std::log2(c.convert_to<double>());
  const std::size_t shift = bits - 60;
  Count top = c >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(Count(num), Count(den));
}

/// Parses "p/q", "p" or a decimal "0.375" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  static const std::regex form(R"(\s*(-?)(\d+)(?:/(\d+)|\.(\d*))?\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, form)) throw invalid_input("not a rational number: '" + text + "'");
  Count num(m[2].str());
  Count den = 1;
  if (m[3].matched) {
    den = Count(m[3].str());
    if (den == 0) throw invalid_input("zero denominator in '" + text + "'");
  } else if (m[4].matched) {
    for (char d : m[4].str()) {
      num = num * 10 + (d - '0');
      den *= 10;
    }
  }
  Rational q(num, den);
  return m[1].length() ? Rational(-q) : q;
}

inline Count pow_count(const Count& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

}  // namespace cae
