#pragma once

#include <cmath>

#include "fermirmt/special_functions.hpp"

namespace fermirmt {

// v(x) = (1-x)/2 ln((1-x)/2) + (1+x)/2 ln((1+x)/2); the per-mode entropy
// contribution is -v. Evaluations within 1e-15 of an endpoint return the
// analytic limits v(1) = 0 and v(0) = -ln 2 exactly.
inline double entropy_v(double x) {
  if (x >= 1.0 - 1e-15) return 0.0;
  if (x <= 1e-15) return -sf::kLn2;
  const double lo = (1.0 - x) / 2.0;
  const double hi = (1.0 + x) / 2.0;
  return lo * std::log(lo) + hi * std::log(hi);
}

// Per-mode capacity (1-x^2)/4 ln^2((1+x)/(1-x)); continuous limits 0 at both
// x = 0 and x = 1, returned exactly near the endpoints.
inline double capacity_term(double x) {
  if (x >= 1.0 - 1e-15 || x <= 1e-15) return 0.0;
  const double r = std::log((1.0 + x) / (1.0 - x));
  return (1.0 - x * x) / 4.0 * r * r;
}

// (1-x)/2 ln^2((1-x)/2) + (1+x)/2 ln^2((1+x)/2): the two-term part of the
// second-order rewrite of the capacity (capacity_term = this - v^2).
inline double capacity_two_term(double x) {
  const double hi = (1.0 + x) / 2.0;
  double s = 0.0;
  if (x < 1.0 - 1e-15) {
    const double lo = (1.0 - x) / 2.0;
    const double l = std::log(lo);
    s += lo * l * l;
  }
  const double l = std::log(hi);
  s += hi * l * l;
  return s;
}

}  // namespace fermirmt
