#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermirmt/jacobi.hpp"

namespace fermirmt {

struct SumEvalReport {
  double value = 0.0;
  long terms_evaluated = 0;
  long indeterminacies_resolved = 0;
};

// Summation representations of the five integrals behind V[S] and E[C].
// Every Gamma/Pochhammer prefactor has integer arguments, so per-term
// coefficients are assembled as exact big rationals (prefactor folded in) and
// rounded to double once; polygamma content is evaluated in double. Boundary
// terms that the reciprocal-Gamma-zero convention kills are skipped and
// counted, never evaluated at a pole.
SumEvalReport sum_A1(const EnsembleParams& e);
SumEvalReport sum_A2(const EnsembleParams& e);
SumEvalReport sum_B1(const EnsembleParams& e);
SumEvalReport sum_B2(const EnsembleParams& e);
SumEvalReport sum_IC(const EnsembleParams& e);

struct SecondOrderStatistics {
  SumEvalReport a1, a2, b1, b2, ic;
  double i_a = 0.0;       // A1 + A2
  double i_b = 0.0;       // B1 + B2
  double i_c = 0.0;
  double variance = 0.0;  // I_A - I_B
  double capacity = 0.0;  // I_C - I_A
};

SecondOrderStatistics assemble(const EnsembleParams& e);

// (1/h_k) * int_{-1}^{1} (1+x)/2 ln((1+x)/2) (1-x^2)^a p_k^2 dx, the building
// block of B1 and of the mean; the a = 0, k = 0 value is the analytic limit
// -1/2. The bracket is pinned against direct quadrature by tests; an
// alternative transcription off by 1/(2(k+a)) is rejected there.
double mean_integral_bracket(long a, long k);

// E[S] through the summation route: -sum_k bracket(a, k).
double mean_entropy_sums(const EnsembleParams& e);

// Epsilon-perturbed evaluations of A1/A2: the boundary factors that the pole
// convention zeroes are evaluated at argument +eps instead. Used to verify
// that the conventions agree with the analytic limits (Richardson in eps).
double sum_A1_perturbed(const EnsembleParams& e, double eps);
double sum_A2_perturbed(const EnsembleParams& e, double eps);

enum class SemiClosedPart { IA, IB, IC };

// The a = 0 semi-closed expressions, explicit unsimplifiable basis sums
// included.
double semi_closed_a0(long n, SemiClosedPart which);

struct IdentityCheck {
  std::string name;
  long trials = 0;
  double max_rel_err = 0.0;
  std::string worst_params;
  bool pass = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  long trials = 0;
  double max_rel_err = 0.0;
  bool all_pass = false;
};

// Checks the eight digamma/trigamma finite-sum identities, the order-0/1
// duplication identities and the four
// unit-argument hypergeometric sum identities behind A2 at random admissible
// quarter-grid parameters, both sides brute-forced, to 1e-10 relative.
IdentityReport identity_suite(long trials, std::uint64_t seed);

}  // namespace fermirmt
