#include <doctest.h>

#include <cmath>
#include <random>

#include "fermirmt/observables.hpp"
#include "fermirmt/quadrature.hpp"

using namespace fermirmt;

TEST_CASE("integrate_1d analytic values") {
  CHECK(integrate_1d([](double) { return 1.0; }).value == doctest::Approx(1.0).epsilon(1e-13));
  // endpoint log singularity
  CHECK(integrate_1d([](double x) { return std::log(1.0 - x); }).value ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(integrate_1d([](double x) { return entropy_v(x); }).value ==
        doctest::Approx(-0.5).epsilon(1e-12));
  // smooth cross-check
  CHECK(integrate_1d([](double x) { return std::sin(x); }).value ==
        doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-13));
  // x^2 ln^2 x appears inside A1's k = 0 oracle
  CHECK(integrate_1d([](double x) { return x * x * std::log(x) * std::log(x); }).value ==
        doctest::Approx(2.0 / 27.0).epsilon(1e-12));
}

TEST_CASE("integrate_1d reports its error honestly") {
  const auto r = integrate_1d([](double x) { return std::log(1.0 - x) * std::log(x); });
  // exact: 2 - pi^2/6
  CHECK(std::abs(r.value - (2.0 - sf::kPiSquared / 6.0)) <= std::max(r.err_estimate, 1e-12));
  CHECK(r.err_estimate <= 1e-11);
  CHECK(r.nodes_used > 0);
}

TEST_CASE("integrate_1d convergence failure carries last estimate") {
  QuadratureConfig cfg;
  cfg.target_abs_tol = 1e-30;  // unreachable in double
  cfg.max_levels = 4;
  try {
    integrate_1d([](double x) { return std::cos(17.0 * x); }, cfg);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& err) {
    CHECK(std::isfinite(err.last.value));
    CHECK(err.last.nodes_used > 0);
  }
}

TEST_CASE("observable endpoint limits are exact") {
  CHECK(entropy_v(1.0) == 0.0);
  CHECK(entropy_v(0.0) == -sf::kLn2);
  CHECK(entropy_v(1.0 - 5e-16) == 0.0);
  CHECK(capacity_term(0.0) == 0.0);
  CHECK(capacity_term(1.0) == 0.0);
  CHECK(capacity_term(0.5) == doctest::Approx(0.1875 * std::log(3.0) * std::log(3.0)).epsilon(1e-15));
}

TEST_CASE("mean_entropy_quad small cases") {
  CHECK(mean_entropy_quad(EnsembleParams(1, 1)).value == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(mean_entropy_quad(EnsembleParams(1, 2)).value ==
        doctest::Approx(7.0 / 12.0).epsilon(1e-11));
}

TEST_CASE("variance_quad at m = n = 1 against the analytic value") {
  // V = E[v^2] - (E[v])^2 = 7/12 - pi^2/18 under the uniform density
  const auto r = variance_quad(EnsembleParams(1, 1));
  CHECK(r.value == doctest::Approx(7.0 / 12.0 - sf::kPiSquared / 18.0).epsilon(1e-9));
}

TEST_CASE("capacity_quad at m = n = 1 against the analytic value") {
  const auto r = capacity_quad(EnsembleParams(1, 1));
  CHECK(r.value == doctest::Approx(sf::kPiSquared / 18.0 - 1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("capacity integrand form equivalence") {
  // int c(x) K = int (two-term - v^2) K for a few ensembles
  for (const auto& e : {EnsembleParams(1, 1), EnsembleParams(2, 3), EnsembleParams(3, 3)}) {
    const auto direct = capacity_quad(e);
    const auto ia = integral_ia_quad(e);
    const auto ic = integral_ic_quad(e);
    CHECK(std::abs(direct.value - (ic.value - ia.value)) <= 1e-10);
  }
}

TEST_CASE("I_B error estimate honesty under node doubling") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    const long m = 1 + static_cast<long>(rng() % 4);
    const long n = m + static_cast<long>(rng() % 3);
    const EnsembleParams e(m, n);
    QuadratureConfig cfg;
    cfg.two_d_nodes = 300;
    const auto coarse = integral_ib_quad(e, cfg);
    QuadratureConfig cfg2;
    cfg2.two_d_nodes = 600;
    const auto fine = integral_ib_quad(e, cfg2);
    CHECK(std::abs(fine.value - coarse.value) <= std::max(coarse.err_estimate, 1e-13));
  }
}
