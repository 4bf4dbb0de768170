#include <doctest.h>

#include <cmath>

#include "fermirmt/closed_form.hpp"
#include "fermirmt/special_functions.hpp"

using namespace fermirmt;
namespace sfn = fermirmt::sf;

namespace {
constexpr double kGamma = 0.5772156649015328606065120900824024;
}

TEST_CASE("digamma_int at small integers") {
  CHECK(sfn::digamma_int(1) == doctest::Approx(-kGamma).epsilon(1e-15));
  CHECK(sfn::digamma_int(2) == doctest::Approx(1.0 - kGamma).epsilon(1e-15));
  CHECK(sfn::digamma_int(4) == doctest::Approx(11.0 / 6.0 - kGamma).epsilon(1e-15));
  CHECK_THROWS_AS(sfn::digamma_int(0), std::domain_error);
  CHECK_THROWS_AS(sfn::digamma_int(-3), std::domain_error);
}

TEST_CASE("digamma recurrence psi0(l+1) - psi0(l) = 1/l") {
  // relative to the operand scale: the difference of two ~ln(l) values can
  // never be more accurate than their ulps
  for (long l = 1; l <= 10000; l = (l < 100 ? l + 1 : l * 3 / 2)) {
    const double lhs = sfn::digamma_int(l + 1) - sfn::digamma_int(l);
    const double rhs = 1.0 / static_cast<double>(l);
    const double scale = std::max({std::abs(sfn::digamma_int(l + 1)), std::abs(rhs), 1.0});
    CHECK(std::abs(lhs - rhs) <= 1e-14 * scale);
  }
}

TEST_CASE("digamma_int large-argument accuracy vs asymptotic expansion") {
  // psi0(l) = ln l - 1/(2l) - 1/(12 l^2) + 1/(120 l^4) - ... converges fast
  // at l = 1e6; an independent route for the 1e-14 relative bound.
  const long l = 1000000;
  const double x = static_cast<double>(l);
  const double asym = std::log(x) - 1.0 / (2 * x) - 1.0 / (12 * x * x) + 1.0 / (120 * x * x * x * x);
  CHECK(sfn::digamma_int(l) == doctest::Approx(asym).epsilon(1e-14));
}

TEST_CASE("trigamma_int at small integers") {
  const double z2 = sfn::kPiSquared / 6.0;
  CHECK(sfn::trigamma_int(1) == doctest::Approx(z2).epsilon(1e-15));
  CHECK(sfn::trigamma_int(2) == doctest::Approx(z2 - 1.0).epsilon(1e-15));
  CHECK(sfn::trigamma_int(4) == doctest::Approx(z2 - 49.0 / 36.0).epsilon(1e-15));
  CHECK_THROWS_AS(sfn::trigamma_int(0), std::domain_error);
}

TEST_CASE("polygamma_shifted anchors and recurrence") {
  // psi0(3/2) = 2 - gamma - 2 ln 2
  CHECK(sfn::polygamma_shifted(0, 1, Rational(1, 2)) ==
        doctest::Approx(2.0 - kGamma - 2.0 * sfn::kLn2).epsilon(1e-14));
  // psi0(5/4) = psi0(1/4) + 4
  CHECK(sfn::polygamma_shifted(0, 1, Rational(1, 4)) ==
        doctest::Approx(sfn::kDigammaQuarter + 4.0).epsilon(1e-14));
  // psi1(5/2) = pi^2/2 - 4 - 4/9
  CHECK(sfn::polygamma_shifted(1, 2, Rational(1, 2)) ==
        doctest::Approx(sfn::kPiSquared / 2.0 - 4.0 - 4.0 / 9.0).epsilon(1e-13));
  CHECK_THROWS_AS(sfn::polygamma_shifted(0, 1, Rational(1, 3)), std::domain_error);
  CHECK_THROWS_AS(sfn::polygamma_shifted(2, 1, Rational(1, 2)), std::domain_error);
  CHECK_THROWS_AS(sfn::polygamma_shifted(0, 0, Rational(1, 2)), std::domain_error);
}

TEST_CASE("duplication identities") {
  // psi0(2k) = ln 2 + (psi0(k) + psi0(k + 1/2)) / 2
  for (long k = 1; k <= 1000; k = (k < 40 ? k + 1 : k * 2)) {
    const double lhs0 = sfn::digamma_int(2 * k);
    const double rhs0 =
        sfn::kLn2 + 0.5 * (sfn::digamma_int(k) + sfn::polygamma_shifted(0, k, Rational(1, 2)));
    CHECK(std::abs(lhs0 - rhs0) <= 1e-13 * std::max(1.0, std::abs(lhs0)));
    const double lhs1 = sfn::trigamma_int(2 * k);
    const double rhs1 =
        0.25 * (sfn::trigamma_int(k) + sfn::polygamma_shifted(1, k, Rational(1, 2)));
    CHECK(std::abs(lhs1 - rhs1) <= 1e-13 * std::max(1.0, std::abs(lhs1)));
  }
}

TEST_CASE("pochhammer") {
  CHECK(sfn::pochhammer(Rational(3), 0) == Rational(1));
  CHECK(sfn::pochhammer(Rational(2), 3) == Rational(24));
  CHECK(sfn::pochhammer(Rational(-2), 4) == Rational(0));
  CHECK(sfn::pochhammer(Rational(1, 2), 2) == Rational(3, 4));
}

TEST_CASE("reciprocal_gamma_int and pole convention") {
  CHECK(sfn::reciprocal_gamma_int(5) == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK(sfn::reciprocal_gamma_int(0) == 0.0);
  CHECK(sfn::reciprocal_gamma_int(-3) == 0.0);
  for (long l = 1; l <= 60; ++l) {
    CHECK(sfn::reciprocal_gamma_int(l) * std::tgamma(static_cast<double>(l)) ==
          doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("pole_expansion coefficients") {
  const auto g0 = sfn::pole_expansion(sfn::PoleKind::Gamma, 0);
  CHECK(g0.pole_order == 1);
  CHECK(g0.leading == doctest::Approx(1.0));
  CHECK(g0.constant == doctest::Approx(-kGamma).epsilon(1e-14));

  const auto d0 = sfn::pole_expansion(sfn::PoleKind::Digamma, 0);
  CHECK(d0.leading == doctest::Approx(-1.0));
  CHECK(d0.constant == doctest::Approx(-kGamma).epsilon(1e-14));
  CHECK(d0.linear == doctest::Approx(sfn::trigamma_int(1)).epsilon(1e-14));  // 2 psi1(1) - psi1(1)

  const auto t2 = sfn::pole_expansion(sfn::PoleKind::Trigamma, 2);
  CHECK(t2.pole_order == 2);
  CHECK(t2.leading == doctest::Approx(1.0));
  CHECK(t2.constant ==
        doctest::Approx(-sfn::trigamma_int(3) + sfn::trigamma_int(1) + sfn::kPiSquared / 6.0)
            .epsilon(1e-14));

  // numeric cross-check against lgamma/tgamma at eps distance from the pole
  const double eps = 1e-5;
  const auto g2 = sfn::pole_expansion(sfn::PoleKind::Gamma, 2);
  const double approx = g2.leading / eps + g2.constant;
  CHECK(std::tgamma(-2.0 + eps) == doctest::Approx(approx).epsilon(1e-4));

  CHECK_THROWS_AS(sfn::pole_expansion(sfn::PoleKind::Gamma, -1), std::domain_error);
}

TEST_CASE("ClosedFormValue evaluate") {
  ClosedFormValue half = ClosedFormValue::constant(Rational(1, 2));
  CHECK(half.evaluate() == doctest::Approx(0.5));

  ClosedFormValue t;
  t.add_term(PolyBasisTerm::trigamma(Rational(1)), Rational(1, 8));
  CHECK(t.evaluate() == doctest::Approx(sfn::kPiSquared / 48.0).epsilon(1e-15));
}

TEST_CASE("ClosedFormValue canonical form and exact linearity") {
  ClosedFormValue u;
  u.add_term(PolyBasisTerm::digamma(Rational(4)), Rational(1, 3));
  u.add_term(PolyBasisTerm::digamma(Rational(4)), Rational(2, 3));  // merges
  CHECK(u.terms().size() == 1);
  CHECK(u.coefficient(PolyBasisTerm::digamma(Rational(4))) == Rational(1));

  u.add_term(PolyBasisTerm::digamma(Rational(4)), Rational(-1));  // cancels to zero
  CHECK(u.terms().empty());

  ClosedFormValue a, b;
  a.add_term(PolyBasisTerm::trigamma(Rational(7)), Rational(3, 7));
  a.add_term(PolyBasisTerm::ln2(), Rational(-2, 5));
  b.add_term(PolyBasisTerm::digamma(Rational(9, 4)), Rational(11, 3));
  b.add_term(PolyBasisTerm::trigamma(Rational(7)), Rational(1, 7));
  const Rational alpha(13, 11);
  const ClosedFormValue combo = alpha * a + b;
  CHECK(combo.evaluate() ==
        doctest::Approx(to_double(alpha) * a.evaluate() + b.evaluate()).epsilon(1e-14));

  CHECK_THROWS_AS(PolyBasisTerm::digamma(Rational(-1)), std::domain_error);
  CHECK_THROWS_AS(PolyBasisTerm::digamma(Rational(1, 3)), std::domain_error);
}

TEST_CASE("ClosedFormValue canonicalized expands integer polygammas exactly") {
  ClosedFormValue v;
  v.add_term(PolyBasisTerm::digamma(Rational(4)), Rational(2));
  v.add_term(PolyBasisTerm::trigamma(Rational(3)), Rational(1));
  const ClosedFormValue c = v.canonicalized();
  // 2 psi0(4) + psi1(3) = -2 gamma + 11/3 + pi^2/6 - 5/4
  CHECK(c.coefficient(PolyBasisTerm::euler_gamma()) == Rational(-2));
  CHECK(c.coefficient(PolyBasisTerm::pi2()) == Rational(1, 6));
  CHECK(c.coefficient(PolyBasisTerm::one()) == Rational(11, 3) - Rational(5, 4));
  CHECK(c.evaluate() == doctest::Approx(v.evaluate()).epsilon(1e-15));
}
