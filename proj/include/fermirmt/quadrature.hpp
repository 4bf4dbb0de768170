#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "fermirmt/jacobi.hpp"

namespace fermirmt {

struct QuadratureConfig {
  double target_abs_tol = 1e-11;
  int max_levels = 10;    // tanh-sinh refinement depth
  int two_d_nodes = 400;  // minimum per-axis node count for the tensor I_B grid
};

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long nodes_used = 0;
};

// Thrown when the level refinement does not reach target_abs_tol; carries the
// last estimate.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(QuadratureResult r)
      : std::runtime_error("quadrature did not converge"), last(r) {}
  QuadratureResult last;
};

namespace ts_detail {

// One tanh-sinh abscissa on (0,1) with its endpoint distances kept separately
// so integrands can be sampled without cancellation at either end.
struct Node {
  double x;       // abscissa
  double weight;  // dx/dt weight (step factor not included)
};

// Nodes at t = j*h for j != 0 plus the center; emits only nodes whose
// endpoint distance is representable. level 0 is h = 1, each level halves h.
void append_level_nodes(int level, std::vector<Node>& out);

}  // namespace ts_detail

// Tanh-sinh (double-exponential) integration of f over [0,1]. Absorbs
// endpoint singularities up to logarithmic strength. err_estimate is the
// difference between the last two refinement levels.
QuadratureResult integrate_1d(const std::function<double(double)>& f, const QuadratureConfig& cfg = {});

// E[S] = -int v(x) K(x,x) dx.
QuadratureResult mean_entropy_quad(const EnsembleParams& e, const QuadratureConfig& cfg = {});

// V[S] = I_A - I_B with I_A = int v^2 K(x,x) and I_B the 2-D integral of
// v(x) v(y) K^2(x,y) on a tensor tanh-sinh grid.
QuadratureResult variance_quad(const EnsembleParams& e, const QuadratureConfig& cfg = {});

// I_A alone and I_B alone (route-level diagnostics for the sums module).
QuadratureResult integral_ia_quad(const EnsembleParams& e, const QuadratureConfig& cfg = {});
QuadratureResult integral_ib_quad(const EnsembleParams& e, const QuadratureConfig& cfg = {});
QuadratureResult integral_ic_quad(const EnsembleParams& e, const QuadratureConfig& cfg = {});

// E[C] = int [(1-x^2)/4 ln^2((1+x)/(1-x))] K(x,x) dx.
QuadratureResult capacity_quad(const EnsembleParams& e, const QuadratureConfig& cfg = {});

}  // namespace fermirmt
