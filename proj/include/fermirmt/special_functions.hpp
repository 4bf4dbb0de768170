#pragma once

#include <cstdint>

#include "fermirmt/rational.hpp"

namespace fermirmt::sf {

// Constants rounded from 34-digit references.
inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;
inline constexpr double kPiSquared = 9.869604401089358618834490999876151;
inline constexpr double kLn2 = 0.6931471805599453094172321214581766;

// Quarter-grid polygamma anchors, rounded from 34-digit references:
// psi0(1/2) = -gamma - 2 ln 2, psi0(1/4) = -gamma - 3 ln 2 - pi/2,
// psi1(1/2) = pi^2/2, psi1(1/4) = pi^2 + 8G with G Catalan's constant.
inline constexpr double kDigammaQuarter = -4.227453533376265408089530146096684;
inline constexpr double kDigammaHalf = -1.963510026021423479440976332998756;
inline constexpr double kDigammaThreeQuarter = -1.085860879786472169626886762817181;
inline constexpr double kTrigammaQuarter = 17.19732915450711073927131911933522;
inline constexpr double kTrigammaHalf = 4.934802200544679309417245499938076;
inline constexpr double kTrigammaThreeQuarter = 2.541879647671606498397662880417078;

// psi0(l) = -gamma + sum_{k=1}^{l-1} 1/k, compensated summation.
double digamma_int(long l);

// psi1(l) = pi^2/6 - sum_{k=1}^{l-1} 1/k^2, compensated summation.
double trigamma_int(long l);

// psi_j(base + shift) for j in {0,1}, base >= 1 integer, shift in
// {1/4, 1/2, 3/4}: anchor constant plus the forward recurrence
// psi0(x+1) = psi0(x) + 1/x (order-1 analogue with -1/x^2).
double polygamma_shifted(int order, long base, const Rational& shift);

// psi_j at any positive quarter-grid rational (integers included).
double polygamma_quarter_grid(int order, const Rational& arg);

// (a)_n = prod_{i=0}^{n-1} (a + i), exact.
Rational pochhammer(const Rational& a, long n);
double pochhammer(double a, long n);

// 1/Gamma(l); exactly 0 for l <= 0 (Gamma pole). The zero convention keeps
// boundary summands of the integral summation route well-defined.
double reciprocal_gamma_int(long l);

enum class PoleKind { Gamma, Digamma, Trigamma };

// Laurent data around -l (l >= 0):
//   Gamma(-l+e)    = leading/e   + constant + O(e)
//   psi0(-l+e)     = leading/e   + constant + linear*e + O(e^2)
//   psi1(-l+e)     = leading/e^2 + constant + O(e)
struct PoleExpansion {
  int pole_order;
  double leading;
  double constant;
  double linear;
};

PoleExpansion pole_expansion(PoleKind kind, long l);

}  // namespace fermirmt::sf
