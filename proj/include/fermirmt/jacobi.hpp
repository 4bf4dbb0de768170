#pragma once

#include <stdexcept>

#include "fermirmt/rational.hpp"

namespace fermirmt {

// Subsystem dimensions; a = n - m is the parameter of the ensemble weight.
struct EnsembleParams {
  long m = 1;
  long n = 1;

  EnsembleParams(long m_, long n_) : m(m_), n(n_) {
    if (m < 1 || n < m) throw std::domain_error("EnsembleParams: need 1 <= m <= n");
  }
  [[nodiscard]] long a() const { return n - m; }
};

struct JacobiParams {
  double alpha = 0.0;  // > -1
  double beta = 0.0;   // > -1
  long degree = 0;

  JacobiParams(double alpha_, double beta_, long degree_) : alpha(alpha_), beta(beta_), degree(degree_) {
    if (!(alpha > -1.0) || !(beta > -1.0)) throw std::domain_error("JacobiParams: need alpha, beta > -1");
    if (degree < 0) throw std::domain_error("JacobiParams: need degree >= 0");
  }
};

enum class JacobiRep { Ascending, Descending, Product };

// J_k^{(alpha,beta)}(x) by the chosen finite series. The series are evaluated
// in exact rational arithmetic (every double input is an exact rational) and
// rounded once at the end, so all three representations agree to the last ulp
// at any degree and no Gamma ratio can overflow.
double jacobi_eval(const JacobiParams& p, double x, JacobiRep rep);
Rational jacobi_eval_exact(const Rational& alpha, const Rational& beta, long degree, const Rational& x,
                           JacobiRep rep);

// p_k(x) = J^{(a,a)}_{2k}(x), the ensemble's even polynomial of degree 2k.
// Ascending series in compensated double-double arithmetic (exact-rational
// fallback above degree 30, where even that loses too much to cancellation).
double p_eval(const EnsembleParams& e, long k, double x);

// h_k = 2^{2a} Gamma^2(2k+a+1) / ((4k+2a+1) Gamma(2k+2a+1) Gamma(2k+1)),
// assembled in log-space.
double norm_h(const EnsembleParams& e, long k);

// int_{-1}^{1} ((1-x)/2)^a ((1+x)/2)^c J_k^{(a,b)}(x) dx
//   = 2 G(c+1) G(k+a+1) G(c-b+1) / (k! G(k+a+c+2) G(c-k-b+1)),
// with 1/G(nonpositive integer) = 0.
double integral_ac(double a, double b, double c, long k);

// int_{-1}^{1} ((1-x)/2)^d ((1+x)/2)^c J_k^{(a,b)}(x) dx as the Rodrigues
// finite sum over i = 0..k, same reciprocal-Gamma convention.
double integral_cd(double a, double b, double c, double d, long k);

}  // namespace fermirmt
