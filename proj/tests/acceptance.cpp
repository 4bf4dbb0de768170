// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fermirmt/integral_sums.hpp"
#include "fermirmt/closed_forms.hpp"
#include "fermirmt/kernel.hpp"
#include "fermirmt/ks.hpp"
#include "fermirmt/quadrature.hpp"
#include "fermirmt/sampling.hpp"
#include "fermirmt/special_functions.hpp"
#include "fermirmt/summation.hpp"

using namespace fermirmt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(int index, const std::string& name, double budget_s,
            const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_budget = secs < budget_s;
  const bool pass = o.pass && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %d: %s (%s; %.2f s of %.0f s budget)\n", pass ? "PASS" : "FAIL",
              index, name.c_str(), o.detail.c_str(), secs, budget_s);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double exact_variance(const EnsembleParams& e) {
  return (e.m == e.n ? variance_entropy_a0(e.n) : variance_entropy_conjecture(e)).evaluate();
}

}  // namespace

int main() {
  report(1, "mean entropy closed form vs quadrature, m <= 6, n <= 9", 10.0, [] {
    double worst = 0.0;
    for (long m = 1; m <= 6; ++m) {
      for (long n = m; n <= 9; ++n) {
        const EnsembleParams e(m, n);
        worst = std::max(worst,
                         std::abs(mean_entropy(e).evaluate() - mean_entropy_quad(e).value));
      }
    }
    const bool spots = std::abs(mean_entropy(EnsembleParams(1, 1)).evaluate() - 0.5) < 1e-12 &&
                       std::abs(mean_entropy(EnsembleParams(1, 2)).evaluate() - 7.0 / 12.0) < 1e-12;
    return Outcome{worst <= 1e-9 && spots, "max |delta| " + fmt(worst)};
  });

  report(2, "equal-dimension variance: closed form vs quadrature and summation routes, n = 1..8", 60.0, [] {
    double worst = 0.0;
    for (long n = 1; n <= 8; ++n) {
      const EnsembleParams e(n, n);
      const double exact = variance_entropy_a0(n).evaluate();
      worst = std::max(worst, std::abs(exact - variance_quad(e).value));
      worst = std::max(worst, std::abs(exact - assemble(e).variance));
    }
    const bool spot =
        std::abs(variance_entropy_a0(1).evaluate() - (7.0 / 12.0 - sf::kPiSquared / 18.0)) < 1e-12;
    return Outcome{worst <= 1e-8 && spot, "max |delta| " + fmt(worst)};
  });

  report(3, "conjecture vs quadrature; exact reduction at m = n", 120.0, [] {
    double worst = 0.0;
    for (const auto& e : {EnsembleParams(1, 2), EnsembleParams(1, 3), EnsembleParams(2, 3),
                          EnsembleParams(2, 4), EnsembleParams(3, 5), EnsembleParams(2, 5)}) {
      worst = std::max(worst, std::abs(variance_entropy_conjecture(e).evaluate() -
                                       variance_quad(e).value));
    }
    bool reduces = true;
    for (long n = 1; n <= 8; ++n) {
      reduces = reduces && variance_entropy_conjecture(EnsembleParams(n, n)) == variance_entropy_a0(n);
    }
    return Outcome{worst <= 1e-8 && reduces,
                   "max |delta| " + fmt(worst) + (reduces ? ", reduction exact" : ", reduction BROKEN")};
  });

  report(4, "capacity closed forms vs quadrature, a = 0..3, n <= 12", 60.0, [] {
    double worst = 0.0;
    bool coeff_ok = true;
    for (long a = 0; a <= 3; ++a) {
      for (long n = a + 1; n <= 12; ++n) {
        const EnsembleParams e(n - a, n);
        const ClosedFormValue cf = mean_capacity(a, n);
        worst = std::max(worst, std::abs(cf.evaluate() - capacity_quad(e).value));
        coeff_ok = coeff_ok &&
                   cf.coefficient(PolyBasisTerm::trigamma(Rational(n))) == Rational(-1, 8);
      }
    }
    return Outcome{worst <= 1e-8 && coeff_ok,
                   "max |delta| " + fmt(worst) + (coeff_ok ? ", psi1(n) coeff -1/8" : ", coeff WRONG")};
  });

  report(5, "finite-sum identity suite, 1000 draws per identity", 30.0, [] {
    const IdentityReport r = identity_suite(1000, 0x5eedULL);
    return Outcome{r.all_pass && r.max_rel_err <= 1e-10, "max rel err " + fmt(r.max_rel_err)};
  });

  report(6, "basis-sum cancellation: semi-closed I_A - I_B vs the closed form, n <= 50", 10.0, [] {
    double worst = 0.0;
    for (long n = 1; n <= 50; ++n) {
      const double v =
          semi_closed_a0(n, SemiClosedPart::IA) - semi_closed_a0(n, SemiClosedPart::IB);
      worst = std::max(worst, std::abs(v - variance_entropy_a0(n).evaluate()));
    }
    return Outcome{worst <= 1e-11, "max |delta| " + fmt(worst)};
  });

  report(7, "asymptotic variance recovered along m = n", 5.0, [] {
    const double limit = *variance_entropy_asymptotic(0.5);
    double prev = 1e9, gap128 = 0.0;
    bool monotone = true;
    for (long m : {16L, 32L, 64L, 128L}) {
      const double gap = std::abs(variance_entropy_a0(m).evaluate() - limit);
      monotone = monotone && gap < prev;
      prev = gap;
      if (m == 128) gap128 = gap;
    }
    return Outcome{monotone && gap128 < 2e-3,
                   std::string(monotone ? "monotone" : "NOT monotone") + ", gap(128) " + fmt(gap128)};
  });

  report(8, "capacity slope (pi^2 - 8)/8 approached along a = 0", 5.0, [] {
    const double slope = capacity_slope();
    double prev = 1e9, rel64 = 0.0;
    bool monotone = true;
    for (long n : {8L, 16L, 32L, 64L}) {
      const double gap = std::abs(mean_capacity(0, n).evaluate() / static_cast<double>(n) - slope);
      monotone = monotone && gap < prev;
      prev = gap;
      if (n == 64) rel64 = gap / slope;
    }
    return Outcome{monotone && rel64 < 0.01,
                   std::string(monotone ? "monotone" : "NOT monotone") + ", rel gap(64) " + fmt(rel64)};
  });

  report(9, "Monte Carlo concordance at (2,2), (2,4), (3,3), 1e5 samples", 600.0, [] {
    std::ostringstream detail;
    bool ok = true;
    for (const auto& e : {EnsembleParams(2, 2), EnsembleParams(2, 4), EnsembleParams(3, 3)}) {
      ChainConfig cfg;
      cfg.seed = 0xACCE97ULL + static_cast<std::uint64_t>(e.m * 100 + e.n);
      cfg.burn_in = 2000;
      cfg.thinning = 10;
      cfg.chains = 2;
      const StatSummary s = estimate(e, cfg, 100000, Statistic::Entropy);
      const double zm = std::abs(s.mean - mean_entropy(e).evaluate()) / s.stderr_mean;
      const double zv = std::abs(s.variance - exact_variance(e)) / s.stderr_variance;
      const StatSummary c = estimate(e, cfg, 100000, Statistic::Capacity);
      const double zc = std::abs(c.mean - mean_capacity(e.a(), e.n).evaluate()) / c.stderr_mean;
      ok = ok && zm <= 4.0 && zv <= 5.0 && zc <= 4.0;
      detail << "(" << e.m << "," << e.n << ") z=" << fmt(zm) << "/" << fmt(zv) << "/" << fmt(zc)
             << " ";
    }
    return Outcome{ok, detail.str() + "(mean<=4, var<=5, cap<=4)"};
  });

  report(10, "sampler cross-validation KS at (2,3), 5e4 draws each", 600.0, [] {
    const EnsembleParams e(2, 3);
    ChainConfig cfg;
    cfg.seed = 0xD15C0ULL;
    cfg.burn_in = 2000;
    cfg.thinning = 10;
    cfg.chains = 2;
    std::vector<double> gas, phys;
    for (const auto& s : sample_loggas(e, cfg, 50000)) {
      gas.insert(gas.end(), s.values.begin(), s.values.end());
    }
    std::mt19937_64 rng(derive_seed(cfg.seed, 999));
    for (long t = 0; t < 50000; ++t) {
      const Spectrum s = sample_physical(e, rng);
      phys.insert(phys.end(), s.values.begin(), s.values.end());
    }
    const double d = ks_statistic_two_sample(gas, phys);
    const double crit = ks_critical_two_sample(0.01, gas.size(), phys.size());
    return Outcome{d < crit, "KS " + fmt(d) + " vs critical " + fmt(crit)};
  });

  report(11, "Gaussianity trend of standardized entropy, (2,4) -> (16,32)", 600.0, [] {
    ChainConfig cfg;
    cfg.seed = 0x6A0551ULL;
    cfg.burn_in = 2000;
    cfg.thinning = 10;
    cfg.chains = 2;
    const StatSummary small = estimate(EnsembleParams(2, 4), cfg, 100000,
                                       Statistic::StandardizedEntropy);
    const StatSummary big = estimate(EnsembleParams(16, 32), cfg, 100000,
                                     Statistic::StandardizedEntropy);
    const bool ok = std::abs(*big.skewness) < std::abs(*small.skewness) &&
                    std::abs(*big.excess_kurtosis) < std::abs(*small.excess_kurtosis);
    std::ostringstream detail;
    detail << "|skew| " << fmt(std::abs(*small.skewness)) << " -> " << fmt(std::abs(*big.skewness))
           << ", |exkurt| " << fmt(std::abs(*small.excess_kurtosis)) << " -> "
           << fmt(std::abs(*big.excess_kurtosis));
    return Outcome{ok, detail.str()};
  });

  report(12, "kernel normalization and orthogonality, m <= 10, a <= 4", 30.0, [] {
    // fixed-level tanh-sinh grid; the integrands are polynomial x algebraic
    std::vector<ts_detail::Node> nodes;
    for (int level = 0; level <= 7; ++level) ts_detail::append_level_nodes(level, nodes);
    const double h = std::ldexp(1.0, -7);
    double worst_norm = 0.0, worst_orth = 0.0;
    for (long m = 1; m <= 10; ++m) {
      for (long a = 0; a <= 4; ++a) {
        const EnsembleParams e(m, m + a);
        const KernelContext ctx(e);
        std::vector<std::vector<double>> p(static_cast<std::size_t>(m));
        for (long k = 0; k < m; ++k) {
          auto& row = p[static_cast<std::size_t>(k)];
          row.resize(nodes.size());
          for (std::size_t i = 0; i < nodes.size(); ++i) row[i] = p_eval(e, k, nodes[i].x);
        }
        std::vector<double> wa(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          wa[i] = h * nodes[i].weight *
                  std::pow(1.0 - nodes[i].x * nodes[i].x, static_cast<double>(a));
        }
        NeumaierSum knorm;
        for (long k = 0; k < m; ++k) {
          for (long l = k; l < m; ++l) {
            NeumaierSum acc;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
              acc.add(wa[i] * p[static_cast<std::size_t>(k)][i] * p[static_cast<std::size_t>(l)][i]);
            }
            const double expect = (k == l) ? norm_h(e, k) : 0.0;
            worst_orth = std::max(worst_orth, std::abs(acc.value() - expect));
            if (k == l) knorm.add(acc.value() * ctx.inv_h(k));
          }
        }
        worst_norm = std::max(worst_norm, std::abs(knorm.value() - static_cast<double>(m)));
      }
    }
    return Outcome{worst_norm <= 1e-9 && worst_orth <= 1e-10,
                   "norm |delta| " + fmt(worst_norm) + ", orth |delta| " + fmt(worst_orth)};
  });

  if (g_failures == 0) {
    std::printf("acceptance: all 12 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  }
  return g_failures;
}
