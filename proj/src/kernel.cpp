#include "fermirmt/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "fermirmt/summation.hpp"

namespace fermirmt {

namespace {

void check_unit_range(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error(std::string(what) + ": argument outside [0,1]");
}

double int_pow(double base, long e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

KernelContext::KernelContext(EnsembleParams params) : params_(params) {
  inv_h_.reserve(static_cast<std::size_t>(params_.m));
  for (long k = 0; k < params_.m; ++k) {
    const double h = norm_h(params_, k);
    if (!(h > 0.0) || !std::isfinite(h)) throw std::runtime_error("KernelContext: bad normalization h_k");
    inv_h_.push_back(1.0 / h);
  }
}

double kernel_eval(const KernelContext& ctx, double x, double y) {
  check_unit_range(x, "kernel_eval");
  check_unit_range(y, "kernel_eval");
  const EnsembleParams& e = ctx.params();
  NeumaierSum acc;
  for (long k = 0; k < e.m; ++k) {
    acc.add(p_eval(e, k, x) * p_eval(e, k, y) * ctx.inv_h(k));
  }
  const double w = int_pow(std::sqrt((1.0 - x * x) * (1.0 - y * y)), e.a());
  return w * acc.value();
}

double density_one(const KernelContext& ctx, double x) {
  check_unit_range(x, "density_one");
  return kernel_eval(ctx, x, x) / static_cast<double>(ctx.params().m);
}

double density_two(const KernelContext& ctx, double x, double y) {
  const long m = ctx.params().m;
  if (m < 2) throw std::domain_error("density_two: needs m >= 2");
  check_unit_range(x, "density_two");
  check_unit_range(y, "density_two");
  const double kxy = kernel_eval(ctx, x, y);
  const double det = kernel_eval(ctx, x, x) * kernel_eval(ctx, y, y) - kxy * kxy;
  return det / (static_cast<double>(m) * static_cast<double>(m - 1));
}

}  // namespace fermirmt
