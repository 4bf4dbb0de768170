#include "fermirmt/closed_forms.hpp"

#include <cmath>

#include "fermirmt/special_functions.hpp"

namespace fermirmt {

namespace {

PolyBasisTerm psi0(long arg) { return PolyBasisTerm::digamma(Rational(arg)); }
PolyBasisTerm psi1(long arg) { return PolyBasisTerm::trigamma(Rational(arg)); }

}  // namespace

ClosedFormValue mean_entropy(const EnsembleParams& e) {
  const Rational m(e.m), n(e.n);
  ClosedFormValue v;
  v.add_term(psi0(2 * e.m + 2 * e.n), m + n - Rational(1, 2));
  v.add_term(psi0(e.m + e.n), Rational(1, 4) - m);
  v.add_term(psi0(2 * e.n), Rational(1, 2) - n);
  v.add_term(psi0(e.n), Rational(-1, 4));
  v.add_term(PolyBasisTerm::one(), -m);
  return v;
}

ClosedFormValue variance_entropy_a0(long n) {
  if (n < 1) throw std::domain_error("variance_entropy_a0: need n >= 1");
  const Rational N(n);
  ClosedFormValue v;
  v.add_term(psi1(4 * n), Rational(1, 2) - 2 * N);
  v.add_term(psi1(2 * n), (56 * N * N - 36 * N + 5) / (8 * (4 * N - 1)));
  v.add_term(psi1(n), Rational(1, 8));
  v.add_term(psi0(4 * n), Rational(-1, 2));
  v.add_term(psi0(2 * n), Rational(1, 2));
  return v;
}

ClosedFormValue variance_entropy_conjecture(const EnsembleParams& e) {
  const Rational m(e.m), n(e.n);
  ClosedFormValue v;
  v.add_term(psi1(2 * e.m + 2 * e.n), Rational(1, 2) - m - n);
  v.add_term(psi1(2 * e.n), n - Rational(1, 2));
  v.add_term(psi1(e.m + e.n), m * (2 * m + n - 1) / (2 * m + 2 * n - 1) - Rational(1, 8));
  v.add_term(psi1(e.n), Rational(1, 8));
  v.add_term(psi0(2 * e.m + 2 * e.n), Rational(-1, 2));
  v.add_term(psi0(2 * e.n), Rational(1, 2));
  return v;
}

std::optional<double> variance_entropy_asymptotic(double f) {
  if (!(f > 0.0) || f > 1.0) throw std::domain_error("variance_entropy_asymptotic: need f in (0,1]");
  if (f == 1.0) return std::nullopt;  // ln(1-f) divergent
  return (f + f * f + std::log1p(-f)) / 2.0;
}

ClosedFormValue mean_capacity(long a, long n) {
  if (a < 0 || a > 3) {
    throw UnsupportedDifferenceError("mean_capacity: closed forms exist for a = 0..3 only");
  }
  if (n < a + 1) throw std::domain_error("mean_capacity: need n >= a + 1 so that m >= 1");
  const Rational N(n);
  ClosedFormValue v;
  switch (a) {
    case 0: {
      v.add_term(psi1(2 * n), -(2 * N - 1) * (2 * N - 1) / (2 * (4 * N - 1)));
      v.add_term(psi1(n), Rational(-1, 8));
      v.add_term(PolyBasisTerm::pi2(), (8 * N * N - 4 * N + 1) / (16 * (4 * N - 1)));
      v.add_term(PolyBasisTerm::one(), (1 - 2 * N) / 2);
      break;
    }
    case 1: {
      v.add_term(psi1(2 * n), -(4 * N * N - 8 * N + 3) / (2 * (4 * N - 3)));
      v.add_term(psi1(n), Rational(-1, 8));
      v.add_term(PolyBasisTerm::pi2(), (8 * N * N - 12 * N + 3) / (16 * (4 * N - 3)));
      v.add_term(PolyBasisTerm::one(),
                 -(16 * N * N * N - 36 * N * N + 28 * N - 9) / (2 * (2 * N - 1) * (4 * N - 3)));
      break;
    }
    case 2: {
      const Rational c2 = 1 / (2 * N * N - 5 * N + 3);
      v.add_term(psi1(2 * n), (-4 * N * N + 12 * N - 5) / (8 * N - 10));
      v.add_term(psi1(n), Rational(-1, 8));
      v.add_term(psi0(2 * n), c2);
      v.add_term(PolyBasisTerm::euler_gamma(), c2);  // -c2 * psi0(1)
      v.add_term(PolyBasisTerm::pi2(), (8 * N * N - 20 * N + 5) / (64 * N - 80));
      v.add_term(PolyBasisTerm::one(),
                 -(32 * N * N * N * N - 152 * N * N * N + 268 * N * N - 210 * N + 75) /
                     (2 * (2 * N - 3) * (2 * N - 1) * (4 * N - 5)));
      break;
    }
    case 3: {
      const Rational d2 =
          2 * (4 * N * N - 14 * N + 11) / ((N - 2) * (N - 1) * (2 * N - 5) * (2 * N - 3));
      v.add_term(psi1(2 * n), -(2 * N - 7) * (2 * N - 1) / (2 * (4 * N - 7)));
      v.add_term(psi1(n), Rational(-1, 8));
      v.add_term(psi0(2 * n), d2);
      v.add_term(PolyBasisTerm::euler_gamma(), d2);
      v.add_term(PolyBasisTerm::pi2(), (8 * N * N - 28 * N + 7) / (16 * (4 * N - 7)));
      Rational poly = 64 * N * N * N;
      poly = (((((poly - 720 * N * N) + 3408 * N) - 8736) * N + 13176) * N - 11967) * N;
      poly = (poly + 6258) * N - 1470;
      // poly = 64 n^7 - 720 n^6 + 3408 n^5 - 8736 n^4 + 13176 n^3 - 11967 n^2 + 6258 n - 1470
      v.add_term(PolyBasisTerm::one(),
                 -poly / (2 * (N - 2) * (N - 1) * (2 * N - 5) * (2 * N - 3) * (2 * N - 1) * (4 * N - 7)));
      break;
    }
  }
  return v;
}

double capacity_slope() { return (sf::kPiSquared - 8.0) / 8.0; }

}  // namespace fermirmt
