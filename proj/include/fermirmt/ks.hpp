#pragma once

#include <functional>
#include <vector>

namespace fermirmt {

// Tabulated CDF of a density on [0,1]: composite Gauss-Legendre panels plus
// linear interpolation between grid points. Good to ~1e-8, far below any KS
// tolerance used here.
class CdfTable {
 public:
  CdfTable(const std::function<double(double)>& density, int panels = 4096);
  [[nodiscard]] double operator()(double x) const;

 private:
  std::vector<double> cum_;  // cum_[i] = F(i / panels), normalized to F(1) = 1
};

// One-sample Kolmogorov-Smirnov statistic sup |F_n - F| (samples need not be
// sorted on entry).
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample KS statistic.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value at significance alpha: c(alpha) * sqrt(1/n) for
// one sample, c(alpha) * sqrt((n+m)/(n m)) for two.
double ks_critical_one_sample(double alpha, std::size_t n);
double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m);

}  // namespace fermirmt
