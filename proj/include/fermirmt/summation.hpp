#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fermirmt {

// Neumaier-compensated accumulator. Keeps the low-order bits that plain
// addition drops when summands differ wildly in magnitude.
class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Deterministic pairwise tree reduction. The result depends only on the
// order of `terms`, never on how the terms were produced or partitioned.
inline double pairwise_sum(std::span<const double> terms) {
  const std::size_t n = terms.size();
  if (n <= 8) {
    NeumaierSum acc;
    for (double t : terms) acc.add(t);
    return acc.value();
  }
  const std::size_t half = n / 2;
  return pairwise_sum(terms.subspan(0, half)) + pairwise_sum(terms.subspan(half));
}

inline double pairwise_sum(const std::vector<double>& terms) {
  return pairwise_sum(std::span<const double>(terms));
}

}  // namespace fermirmt
