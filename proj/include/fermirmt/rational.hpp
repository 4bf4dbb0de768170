#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace fermirmt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Correctly-rounded-to-50-digits conversion; safe for rationals whose
// numerator/denominator individually overflow double.
inline double to_double(const Rational& r) {
  using Float50 = boost::multiprecision::cpp_bin_float_50;
  const Float50 num(boost::multiprecision::numerator(r));
  const Float50 den(boost::multiprecision::denominator(r));
  return static_cast<double>(num / den);
}

// Doubles are exact binary rationals; this conversion is lossless.
inline Rational rational_from(double x) { return Rational(x); }

inline BigInt factorial_big(long n) {
  BigInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace fermirmt
