#include "fermirmt/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "fermirmt/summation.hpp"

namespace fermirmt::sf {

double digamma_int(long l) {
  if (l < 1) throw std::domain_error("digamma_int: argument must be a positive integer");
  NeumaierSum acc;
  acc.add(-kEulerGamma);
  for (long k = 1; k < l; ++k) acc.add(1.0 / static_cast<double>(k));
  return acc.value();
}

double trigamma_int(long l) {
  if (l < 1) throw std::domain_error("trigamma_int: argument must be a positive integer");
  NeumaierSum acc;
  acc.add(kPiSquared / 6.0);
  for (long k = 1; k < l; ++k) {
    const double dk = static_cast<double>(k);
    acc.add(-1.0 / (dk * dk));
  }
  return acc.value();
}

namespace {

// shift must already be validated; returns the psi_j(shift) anchor.
double anchor(int order, const Rational& shift) {
  const Rational quarter(1, 4), half(1, 2), three_quarter(3, 4);
  if (order == 0) {
    if (shift == quarter) return kDigammaQuarter;
    if (shift == half) return kDigammaHalf;
    return kDigammaThreeQuarter;
  }
  if (shift == quarter) return kTrigammaQuarter;
  if (shift == half) return kTrigammaHalf;
  return kTrigammaThreeQuarter;
}

bool supported_shift(const Rational& shift) {
  return shift == Rational(1, 4) || shift == Rational(1, 2) || shift == Rational(3, 4);
}

}  // namespace

double polygamma_shifted(int order, long base, const Rational& shift) {
  if (order != 0 && order != 1) throw std::domain_error("polygamma_shifted: order must be 0 or 1");
  if (base < 1) throw std::domain_error("polygamma_shifted: base must be >= 1");
  if (!supported_shift(shift)) throw std::domain_error("polygamma_shifted: shift must be 1/4, 1/2 or 3/4");
  const double s = to_double(shift);
  NeumaierSum acc;
  acc.add(anchor(order, shift));
  for (long i = 0; i < base; ++i) {
    const double x = s + static_cast<double>(i);
    acc.add(order == 0 ? 1.0 / x : -1.0 / (x * x));
  }
  return acc.value();
}

double polygamma_quarter_grid(int order, const Rational& arg) {
  if (order != 0 && order != 1) throw std::domain_error("polygamma_quarter_grid: order must be 0 or 1");
  if (arg <= 0) throw std::domain_error("polygamma_quarter_grid: argument must be positive");
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const BigInt den = denominator(arg);
  if (den == 1) {
    const long l = static_cast<long>(numerator(arg));
    return order == 0 ? digamma_int(l) : trigamma_int(l);
  }
  if (den != 2 && den != 4) {
    throw std::domain_error("polygamma_quarter_grid: argument must lie on the quarter grid");
  }
  const BigInt whole = numerator(arg) / den;  // floor for positive arg
  const Rational shift = arg - Rational(whole);
  const long base = static_cast<long>(whole);
  if (base == 0) return anchor(order, shift);
  return polygamma_shifted(order, base, shift);
}

Rational pochhammer(const Rational& a, long n) {
  Rational r = 1;
  for (long i = 0; i < n; ++i) r *= a + i;
  return r;
}

double pochhammer(double a, long n) {
  double r = 1.0;
  for (long i = 0; i < n; ++i) r *= a + static_cast<double>(i);
  return r;
}

double reciprocal_gamma_int(long l) {
  if (l <= 0) return 0.0;
  if (l <= 21) {
    double f = 1.0;
    for (long i = 2; i < l; ++i) f *= static_cast<double>(i);
    return 1.0 / f;
  }
  return std::exp(-std::lgamma(static_cast<double>(l)));
}

PoleExpansion pole_expansion(PoleKind kind, long l) {
  if (l < 0) throw std::domain_error("pole_expansion: l must be >= 0");
  const double zeta2 = kPiSquared / 6.0;
  switch (kind) {
    case PoleKind::Gamma: {
      const double lead = (l % 2 == 0 ? 1.0 : -1.0) * reciprocal_gamma_int(l + 1);
      return {1, lead, lead * digamma_int(l + 1), 0.0};
    }
    case PoleKind::Digamma:
      return {1, -1.0, digamma_int(l + 1), 2.0 * trigamma_int(1) - trigamma_int(l + 1)};
    case PoleKind::Trigamma:
      return {2, 1.0, -trigamma_int(l + 1) + trigamma_int(1) + zeta2, 0.0};
  }
  throw std::domain_error("pole_expansion: unknown kind");
}

}  // namespace fermirmt::sf
