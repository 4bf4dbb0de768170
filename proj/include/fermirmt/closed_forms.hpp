#pragma once

#include <optional>

#include "fermirmt/closed_form.hpp"
#include "fermirmt/jacobi.hpp"

namespace fermirmt {

// Requested capacity difference a = n - m has no closed form (only a = 0..3 do).
class UnsupportedDifferenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// E[S] = (m+n-1/2) psi0(2m+2n) + (1/4-m) psi0(m+n) + (1/2-n) psi0(2n)
//        - psi0(n)/4 - m.
ClosedFormValue mean_entropy(const EnsembleParams& e);

// Exact V[S] at equal dimensions m = n.
ClosedFormValue variance_entropy_a0(long n);

// Conjectured V[S] for any m <= n; reduces term-by-term to the a = 0 form
// when m = n.
ClosedFormValue variance_entropy_conjecture(const EnsembleParams& e);

// Large-dimension limit (f + f^2 + ln(1-f))/2 with f = m/(m+n) in (0,1];
// empty at f = 1 where the expression diverges.
std::optional<double> variance_entropy_asymptotic(double f);

// E[C] for a = n - m in {0,1,2,3}, assembled from exact rational
// coefficients in n. psi0(1) stays symbolic (-gamma) so gamma cancels
// exactly in the (psi0(2n) - psi0(1)) groups.
ClosedFormValue mean_capacity(long a, long n);

// lim E[C]/n = (pi^2 - 8)/8 at a = 0.
double capacity_slope();

}  // namespace fermirmt
