#pragma once

#include <vector>

#include "fermirmt/jacobi.hpp"

namespace fermirmt {

// Correlation kernel of the ensemble on [0,1] with per-k 1/h_k cached.
// Immutable after construction; shareable across threads.
class KernelContext {
 public:
  explicit KernelContext(EnsembleParams params);

  [[nodiscard]] const EnsembleParams& params() const { return params_; }
  [[nodiscard]] double inv_h(long k) const { return inv_h_[static_cast<std::size_t>(k)]; }

 private:
  EnsembleParams params_;
  std::vector<double> inv_h_;
};

// K(x,y) = sqrt((1-x^2)^a (1-y^2)^a) sum_k p_k(x) p_k(y) / h_k.
double kernel_eval(const KernelContext& ctx, double x, double y);

// One-point eigenvalue density g1(x) = K(x,x)/m.
double density_one(const KernelContext& ctx, double x);

// Two-point density (K(x,x)K(y,y) - K^2(x,y)) / (m(m-1)); needs m >= 2.
double density_two(const KernelContext& ctx, double x, double y);

}  // namespace fermirmt
