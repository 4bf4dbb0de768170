#pragma once

#include <cmath>

namespace fermirmt {

// Unevaluated double-double value hi + lo (|lo| <= ulp(hi)/2), about 31
// significant digits. The alternating Jacobi series lose up to 14 digits to
// cancellation at the degrees the kernel uses; this keeps them exact past
// double precision.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  [[nodiscard]] double to_double() const { return hi + lo; }
};

namespace dd_detail {

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double v = s - a;
  const double e = (a - (s - v)) + (b - v);
  return {s, e};
}

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DD operator+(DD a, DD b) {
  DD s = dd_detail::two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a, DD b) { return a + DD{-b.hi, -b.lo}; }

inline DD operator*(DD a, DD b) {
  DD p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = a - DD{q1} * b;
  const double q2 = r.hi / b.hi;
  r = r - DD{q2} * b;
  const double q3 = r.hi / b.hi;
  return dd_detail::quick_two_sum(q1, q2) + DD{q3};
}

inline DD& operator+=(DD& a, DD b) { return a = a + b; }
inline DD& operator-=(DD& a, DD b) { return a = a - b; }
inline DD& operator*=(DD& a, DD b) { return a = a * b; }

}  // namespace fermirmt
