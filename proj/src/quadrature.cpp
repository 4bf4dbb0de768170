#include "fermirmt/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fermirmt/kernel.hpp"
#include "fermirmt/observables.hpp"
#include "fermirmt/summation.hpp"

namespace fermirmt {

namespace ts_detail {

namespace {

constexpr double kTMax = 6.0;

// Distance from the abscissa to the nearer end of (0,1) for t > 0:
// d = (1 - tanh(z))/2 = e^{-2z}/(1 + e^{-2z}) with z = (pi/2) sinh t.
// Computed from the exponential directly so tiny distances stay accurate.
void node_pair(double t, Node& plus, Node& minus, bool& usable) {
  const double z = std::numbers::pi / 2.0 * std::sinh(t);
  const double e2 = std::exp(-2.0 * z);
  const double d = e2 / (1.0 + e2);
  // Nodes indistinguishable from the endpoint in double would hand exact 0/1
  // to the integrand; their true contribution is < 1e-13 for any integrand
  // with at most logarithmic endpoint growth.
  if (d < 1e-15 || !std::isfinite(d)) {
    usable = false;
    return;
  }
  usable = true;
  // sech^2(z) = 4 e^{-2z} / (1 + e^{-2z})^2; the [-1,1] -> [0,1] map halves it
  const double w = std::numbers::pi * std::cosh(t) * e2 / ((1.0 + e2) * (1.0 + e2));
  plus = {1.0 - d, w};
  minus = {d, w};
}

}  // namespace

void append_level_nodes(int level, std::vector<Node>& out) {
  const double h = std::ldexp(1.0, -level);  // 2^-level
  if (level == 0) {
    out.push_back({0.5, std::numbers::pi / 4.0});  // t = 0
    for (long j = 1; j * h <= kTMax; ++j) {
      Node p, m;
      bool ok = false;
      node_pair(j * h, p, m, ok);
      if (!ok) break;
      out.push_back(p);
      out.push_back(m);
    }
    return;
  }
  // odd multiples of h only; even ones belong to coarser levels
  for (long j = 1; j * h <= kTMax; j += 2) {
    Node p, m;
    bool ok = false;
    node_pair(j * h, p, m, ok);
    if (!ok) break;
    out.push_back(p);
    out.push_back(m);
  }
}

}  // namespace ts_detail

QuadratureResult integrate_1d(const std::function<double(double)>& f, const QuadratureConfig& cfg) {
  if (!(cfg.target_abs_tol > 0.0) || cfg.max_levels < 3) {
    throw std::domain_error("integrate_1d: bad QuadratureConfig");
  }
  std::vector<ts_detail::Node> nodes;
  std::vector<double> contrib;
  double prev = 0.0;
  double value = 0.0;
  double err = std::numeric_limits<double>::infinity();
  long used = 0;
  NeumaierSum raw;  // sum of w_j f(x_j) over all nodes so far (h factored out)
  for (int level = 0; level <= cfg.max_levels; ++level) {
    nodes.clear();
    ts_detail::append_level_nodes(level, nodes);
    contrib.resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      contrib[i] = nodes[i].weight * f(nodes[i].x);
    }
    used += static_cast<long>(nodes.size());
    raw.add(pairwise_sum(contrib));
    const double h = std::ldexp(1.0, -level);
    value = h * raw.value();
    if (level >= 2) {
      err = std::abs(value - prev);
      if (err <= cfg.target_abs_tol) return {value, err, used};
    }
    prev = value;
  }
  throw ConvergenceError({value, err, used});
}

namespace {

// Tensor tanh-sinh grid: all nodes up to `level` with step-scaled weights.
struct Grid {
  std::vector<double> x;
  std::vector<double> w;
};

Grid build_grid(int level) {
  Grid g;
  std::vector<ts_detail::Node> nodes;
  for (int l = 0; l <= level; ++l) ts_detail::append_level_nodes(l, nodes);
  const double h = std::ldexp(1.0, -level);
  g.x.reserve(nodes.size());
  g.w.reserve(nodes.size());
  for (const auto& n : nodes) {
    g.x.push_back(n.x);
    g.w.push_back(h * n.weight);
  }
  return g;
}

// Level whose grid has at least `want` nodes (about 12 * 2^level of them).
int level_for_nodes(int want) {
  for (int level = 4; level < 13; ++level) {
    if (12.0 * std::ldexp(1.0, level) >= want) return level;
  }
  return 13;
}

// I_B on a tensor grid at `level`, factorized through the weighted
// polynomial matrix so the kernel is never re-evaluated per pair.
double tensor_ib(const KernelContext& ctx, const Grid& g) {
  const EnsembleParams& e = ctx.params();
  const std::size_t nn = g.x.size();
  const std::size_t m = static_cast<std::size_t>(e.m);
  // phi_k(x) = p_k(x) (1-x^2)^{a/2} / sqrt(h_k); K(x,y) = sum_k phi_k(x) phi_k(y)
  std::vector<double> phi(m * nn);
  for (std::size_t i = 0; i < nn; ++i) {
    const double x = g.x[i];
    const double wa = std::pow(1.0 - x * x, static_cast<double>(e.a()) / 2.0);
    for (std::size_t k = 0; k < m; ++k) {
      phi[k * nn + i] = p_eval(e, static_cast<long>(k), x) * wa * std::sqrt(ctx.inv_h(static_cast<long>(k)));
    }
  }
  std::vector<double> q(nn);
  for (std::size_t i = 0; i < nn; ++i) q[i] = g.w[i] * entropy_v(g.x[i]);
  NeumaierSum acc;
  for (std::size_t i = 0; i < nn; ++i) {
    NeumaierSum row;
    for (std::size_t j = 0; j < i; ++j) {
      double kij = 0.0;
      for (std::size_t k = 0; k < m; ++k) kij += phi[k * nn + i] * phi[k * nn + j];
      row.add(2.0 * q[j] * kij * kij);
    }
    double kii = 0.0;
    for (std::size_t k = 0; k < m; ++k) kii += phi[k * nn + i] * phi[k * nn + i];
    row.add(q[i] * kii * kii);
    acc.add(q[i] * row.value());
  }
  return acc.value();
}

}  // namespace

QuadratureResult mean_entropy_quad(const EnsembleParams& e, const QuadratureConfig& cfg) {
  KernelContext ctx(e);
  auto r = integrate_1d([&](double x) { return entropy_v(x) * kernel_eval(ctx, x, x); }, cfg);
  r.value = -r.value;
  return r;
}

QuadratureResult integral_ia_quad(const EnsembleParams& e, const QuadratureConfig& cfg) {
  KernelContext ctx(e);
  return integrate_1d(
      [&](double x) {
        const double v = entropy_v(x);
        return v * v * kernel_eval(ctx, x, x);
      },
      cfg);
}

QuadratureResult integral_ib_quad(const EnsembleParams& e, const QuadratureConfig& cfg) {
  KernelContext ctx(e);
  const int level = level_for_nodes(cfg.two_d_nodes);
  const Grid fine = build_grid(level);
  const Grid coarse = build_grid(level - 1);
  const double vb = tensor_ib(ctx, fine);
  const double vb_coarse = tensor_ib(ctx, coarse);
  const double err = std::abs(vb - vb_coarse);
  return {vb, err, static_cast<long>(fine.x.size() * fine.x.size())};
}

QuadratureResult integral_ic_quad(const EnsembleParams& e, const QuadratureConfig& cfg) {
  KernelContext ctx(e);
  return integrate_1d([&](double x) { return capacity_two_term(x) * kernel_eval(ctx, x, x); }, cfg);
}

QuadratureResult variance_quad(const EnsembleParams& e, const QuadratureConfig& cfg) {
  const QuadratureResult ia = integral_ia_quad(e, cfg);
  const QuadratureResult ib = integral_ib_quad(e, cfg);
  return {ia.value - ib.value, ia.err_estimate + ib.err_estimate, ia.nodes_used + ib.nodes_used};
}

QuadratureResult capacity_quad(const EnsembleParams& e, const QuadratureConfig& cfg) {
  KernelContext ctx(e);
  return integrate_1d([&](double x) { return capacity_term(x) * kernel_eval(ctx, x, x); }, cfg);
}

}  // namespace fermirmt
