#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// Reduce q into [0, 1).
inline Rational mod1(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

inline Rational rational_of(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(num, den);
}

}  // namespace twc
