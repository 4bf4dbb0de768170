#include "fermirmt/jacobi.hpp"

#include <cmath>
#include <vector>

#include "fermirmt/double_double.hpp"
#include "fermirmt/special_functions.hpp"

namespace fermirmt {

namespace {

// ln|Gamma(x)| with the sign of Gamma(x); x must not be a nonpositive integer.
double log_abs_gamma(double x, int& sign) {
  sign = 1;
  if (x > 0.0) return std::lgamma(x);
  // Gamma alternates sign between consecutive negative integers.
  const double fl = std::floor(x);
  const long idx = static_cast<long>(-fl);
  sign = (idx % 2 == 0) ? 1 : -1;
  return std::lgamma(x);
}

bool is_nonpositive_integer(double x, double tol = 1e-9) {
  return x < 0.5 && std::abs(x - std::round(x)) < tol;
}

Rational exact_ascending(const Rational& a, const Rational& b, long k, const Rational& x) {
  const Rational u = (1 + x) / 2;
  const Rational pre = (k % 2 == 0 ? 1 : -1) * sf::pochhammer(b + 1, k) / Rational(factorial_big(k));
  Rational sum = 0;
  Rational term = 1;  // i = 0
  for (long i = 0; i <= k; ++i) {
    sum += term;
    if (i < k) {
      // ratio t_{i+1}/t_i
      term *= (Rational(-k) + i) * (Rational(k) + a + b + 1 + i) * u;
      term /= (b + 1 + i) * (i + 1);
    }
  }
  return pre * sum;
}

Rational exact_descending(const Rational& a, const Rational& b, long k, const Rational& x) {
  const Rational w = (1 - x) / 2;
  Rational sum = 0;
  Rational term = sf::pochhammer(a + 1, k);  // i = 0
  for (long i = 0; i <= k; ++i) {
    sum += term;
    if (i < k) {
      term *= (Rational(-k) + i) * (Rational(k) + a + b + 1 + i) * w;
      term /= (i + 1) * (a + 1 + i);
    }
  }
  return sum / Rational(factorial_big(k));
}

Rational exact_product(const Rational& a, const Rational& b, long k, const Rational& x) {
  const Rational u = (1 + x) / 2;
  const Rational w = (1 - x) / 2;
  // powers of w ascend, powers of u descend; 0^0 at the ends is an empty product
  Rational sum = 0;
  Rational upow = 1;
  std::vector<Rational> upowers(k + 1);
  for (long i = 0; i <= k; ++i) {
    upowers[i] = upow;
    upow *= u;
  }
  Rational wpow = 1;
  for (long i = 0; i <= k; ++i) {
    const Rational coeff = (i % 2 == 0 ? 1 : -1) * sf::pochhammer(a + i + 1, k - i) *
                           sf::pochhammer(Rational(k) + b - i + 1, i) /
                           Rational(factorial_big(i) * factorial_big(k - i));
    sum += coeff * wpow * upowers[k - i];
    wpow *= w;
  }
  return sum;
}

}  // namespace

Rational jacobi_eval_exact(const Rational& alpha, const Rational& beta, long degree, const Rational& x,
                           JacobiRep rep) {
  switch (rep) {
    case JacobiRep::Ascending: return exact_ascending(alpha, beta, degree, x);
    case JacobiRep::Descending: return exact_descending(alpha, beta, degree, x);
    case JacobiRep::Product: return exact_product(alpha, beta, degree, x);
  }
  throw std::logic_error("jacobi_eval_exact: unknown representation");
}

double jacobi_eval(const JacobiParams& p, double x, JacobiRep rep) {
  return to_double(jacobi_eval_exact(rational_from(p.alpha), rational_from(p.beta), p.degree,
                                     rational_from(x), rep));
}

double p_eval(const EnsembleParams& e, long k, double x) {
  if (k < 0 || k > e.m - 1) throw std::domain_error("p_eval: need 0 <= k <= m-1");
  const long K = 2 * k;           // polynomial degree
  const long a = e.a();
  if (K > 30) {
    // cancellation outruns double-double past here
    return to_double(jacobi_eval_exact(a, a, K, rational_from(x), JacobiRep::Ascending));
  }
  // ascending series of J^{(a,a)}_K in double-double
  const DD u{(1.0 + x) / 2.0};
  DD pre{1.0};
  for (long i = 0; i < K; ++i) {
    pre = pre * DD{static_cast<double>(a + 1 + i)} / DD{static_cast<double>(i + 1)};
  }
  // K is even so the (-1)^K factor is 1
  DD sum{0.0};
  DD term{1.0};
  for (long i = 0; i <= K; ++i) {
    sum += term;
    if (i < K) {
      term = term * DD{static_cast<double>(i - K)} * DD{static_cast<double>(K + 2 * a + 1 + i)} * u;
      term = term / (DD{static_cast<double>(a + 1 + i)} * DD{static_cast<double>(i + 1)});
    }
  }
  return (pre * sum).to_double();
}

double norm_h(const EnsembleParams& e, long k) {
  if (k < 0 || k > e.m - 1) throw std::domain_error("norm_h: need 0 <= k <= m-1");
  const double a = static_cast<double>(e.a());
  const double dk = static_cast<double>(k);
  const double lg = 2.0 * a * sf::kLn2 + 2.0 * std::lgamma(2 * dk + a + 1) -
                    std::log(4 * dk + 2 * a + 1) - std::lgamma(2 * dk + 2 * a + 1) -
                    std::lgamma(2 * dk + 1);
  return std::exp(lg);
}

double integral_ac(double a, double b, double c, long k) {
  if (!(a > -1.0) || !(b > -1.0) || !(c > -1.0)) {
    throw std::domain_error("integral_ac: need a, b, c > -1");
  }
  const double tail = c - static_cast<double>(k) - b + 1.0;
  if (is_nonpositive_integer(tail)) return 0.0;  // 1/Gamma pole
  int s1 = 1, s2 = 1;
  const double lg = std::log(2.0) + std::lgamma(c + 1) + std::lgamma(static_cast<double>(k) + a + 1) +
                    log_abs_gamma(c - b + 1, s1) - std::lgamma(static_cast<double>(k) + 1) -
                    std::lgamma(static_cast<double>(k) + a + c + 2) - log_abs_gamma(tail, s2);
  return s1 * s2 * std::exp(lg);
}

double integral_cd(double a, double b, double c, double d, long k) {
  if (!(a > -1.0) || !(b > -1.0) || !(c > -1.0) || !(d > -1.0)) {
    throw std::domain_error("integral_cd: need a, b, c, d > -1");
  }
  const double dk = static_cast<double>(k);
  int sp1 = 1, sp2 = 1;
  const double log_pre = std::log(2.0) + log_abs_gamma(c - b + 1, sp1) + log_abs_gamma(d - a + 1, sp2) -
                         std::lgamma(c + d + dk + 2);
  double sum = 0.0;
  for (long i = 0; i <= k; ++i) {
    const double di = static_cast<double>(i);
    const double g1 = d - a - di + 1;
    const double g2 = c - b + di - dk + 1;
    if (is_nonpositive_integer(g1) || is_nonpositive_integer(g2)) continue;  // term vanishes
    int t1 = 1, t2 = 1;
    const double lg = std::lgamma(c + di + 1) + std::lgamma(d - di + dk + 1) - std::lgamma(di + 1) -
                      std::lgamma(dk - di + 1) - log_abs_gamma(g1, t1) - log_abs_gamma(g2, t2);
    const double sgn = (i % 2 == 0 ? 1.0 : -1.0) * t1 * t2;
    sum += sgn * std::exp(lg);
  }
  return sp1 * sp2 * std::exp(log_pre) * sum;
}

}  // namespace fermirmt
