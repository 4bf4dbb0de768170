#include "fermirmt/ks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fermirmt {

namespace {

// 4-point Gauss-Legendre on [0,1]
constexpr double kGlNodes[4] = {0.069431844202973712388, 0.33000947820757186760,
                                0.66999052179242813240, 0.93056815579702628761};
constexpr double kGlWeights[4] = {0.17392742256872692869, 0.32607257743127307131,
                                  0.32607257743127307131, 0.17392742256872692869};

}  // namespace

CdfTable::CdfTable(const std::function<double(double)>& density, int panels) {
  if (panels < 8) throw std::domain_error("CdfTable: too few panels");
  cum_.resize(static_cast<std::size_t>(panels) + 1);
  cum_[0] = 0.0;
  const double h = 1.0 / panels;
  for (int p = 0; p < panels; ++p) {
    double s = 0.0;
    for (int g = 0; g < 4; ++g) s += kGlWeights[g] * density((p + kGlNodes[g]) * h);
    cum_[static_cast<std::size_t>(p) + 1] = cum_[static_cast<std::size_t>(p)] + s * h;
  }
  const double total = cum_.back();
  for (double& c : cum_) c /= total;
}

double CdfTable::operator()(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double panels = static_cast<double>(cum_.size() - 1);
  const double t = x * panels;
  const auto i = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i);
  return cum_[i] * (1.0 - frac) + cum_[i + 1] * frac;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

namespace {

double ks_c(double alpha) { return std::sqrt(-0.5 * std::log(alpha / 2.0)); }

}  // namespace

double ks_critical_one_sample(double alpha, std::size_t n) {
  return ks_c(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(double alpha, std::size_t n, std::size_t m) {
  const double dn = static_cast<double>(n), dm = static_cast<double>(m);
  return ks_c(alpha) * std::sqrt((dn + dm) / (dn * dm));
}

}  // namespace fermirmt
