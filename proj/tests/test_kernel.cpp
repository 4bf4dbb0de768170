#include <doctest.h>

#include <cmath>
#include <random>

#include "fermirmt/kernel.hpp"
#include "fermirmt/quadrature.hpp"

using namespace fermirmt;

TEST_CASE("kernel_eval spot values and symmetry") {
  const KernelContext c11(EnsembleParams(1, 1));
  CHECK(kernel_eval(c11, 0.3, 0.9) == doctest::Approx(1.0).epsilon(1e-13));

  const KernelContext c12(EnsembleParams(1, 2));
  CHECK(kernel_eval(c12, 0.0, 0.0) == doctest::Approx(1.5).epsilon(1e-13));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const KernelContext c(EnsembleParams(4, 6));
  for (int t = 0; t < 30; ++t) {
    const double x = u(rng), y = u(rng);
    CHECK(kernel_eval(c, x, y) == doctest::Approx(kernel_eval(c, y, x)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(kernel_eval(c11, -0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(kernel_eval(c11, 0.5, 1.2), std::domain_error);
}

TEST_CASE("density_one closed cases and normalization") {
  const KernelContext c11(EnsembleParams(1, 1));
  for (double x : {0.1, 0.5, 0.9}) CHECK(density_one(c11, x) == doctest::Approx(1.0).epsilon(1e-13));

  const KernelContext c12(EnsembleParams(1, 2));
  for (double x : {0.0, 0.4, 0.8}) {
    CHECK(density_one(c12, x) == doctest::Approx(1.5 * (1.0 - x * x)).epsilon(1e-13));
  }

  for (long m : {1L, 3L, 7L}) {
    for (long a : {0L, 2L}) {
      const KernelContext ctx(EnsembleParams(m, m + a));
      const auto r = integrate_1d([&](double x) { return density_one(ctx, x); }, {1e-12, 11, 400});
      CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("kernel normalization: int K(x,x) dx = m") {
  for (long m = 1; m <= 12; m += (m < 4 ? 1 : 4)) {
    for (long a : {0L, 1L, 4L}) {
      const KernelContext ctx(EnsembleParams(m, m + a));
      const auto r = integrate_1d([&](double x) { return kernel_eval(ctx, x, x); }, {1e-12, 11, 400});
      CHECK(std::abs(r.value - static_cast<double>(m)) <= 1e-9);
    }
  }
}

TEST_CASE("reproducing property: int K(x,z) K(z,y) dz = K(x,y)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (long m : {2L, 5L, 8L}) {
    const KernelContext ctx(EnsembleParams(m, m + 1));
    for (int t = 0; t < 4; ++t) {
      const double x = u(rng), y = u(rng);
      const auto r = integrate_1d(
          [&](double z) { return kernel_eval(ctx, x, z) * kernel_eval(ctx, z, y); }, {1e-11, 11, 400});
      CHECK(std::abs(r.value - kernel_eval(ctx, x, y)) <= 1e-8);
    }
  }
}

TEST_CASE("density_two diagonal zero, symmetry, normalization") {
  const KernelContext ctx(EnsembleParams(2, 3));
  CHECK(density_two(ctx, 0.37, 0.37) == doctest::Approx(0.0).epsilon(1e-12));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    const double x = u(rng), y = u(rng);
    const double d = density_two(ctx, x, y);
    CHECK(d >= -1e-12);
    CHECK(d == doctest::Approx(density_two(ctx, y, x)).epsilon(1e-13));
  }
  // 2-D normalization via an iterated 1-D oracle
  const auto outer = integrate_1d(
      [&](double x) {
        return integrate_1d([&](double y) { return density_two(ctx, x, y); }, {1e-10, 10, 400}).value;
      },
      {1e-9, 9, 400});
  CHECK(outer.value == doctest::Approx(1.0).epsilon(1e-7));

  const KernelContext c11(EnsembleParams(1, 1));
  CHECK_THROWS_AS(density_two(c11, 0.1, 0.2), std::domain_error);
}
