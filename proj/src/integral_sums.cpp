#include "fermirmt/integral_sums.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <utility>

#include "fermirmt/parallel.hpp"
#include "fermirmt/special_functions.hpp"
#include "fermirmt/summation.hpp"

namespace fermirmt {

namespace {

// psi0/psi1 at integer arguments 1..maxarg, built once per sum evaluation
// with compensated recurrences.
struct PsiTables {
  std::vector<double> t0, t1;

  explicit PsiTables(long maxarg) : t0(maxarg + 1), t1(maxarg + 1) {
    NeumaierSum h, h2;
    h.add(-sf::kEulerGamma);
    h2.add(sf::kPiSquared / 6.0);
    for (long l = 1; l <= maxarg; ++l) {
      t0[l] = h.value();
      t1[l] = h2.value();
      const double dl = static_cast<double>(l);
      h.add(1.0 / dl);
      h2.add(-1.0 / (dl * dl));
    }
  }
  [[nodiscard]] double p0(long l) const { return t0[static_cast<std::size_t>(l)]; }
  [[nodiscard]] double p1(long l) const { return t1[static_cast<std::size_t>(l)]; }
};

struct Factorials {
  std::vector<BigInt> f;

  explicit Factorials(long maxn) : f(maxn + 1) {
    f[0] = 1;
    for (long i = 1; i <= maxn; ++i) f[i] = f[i - 1] * i;
  }
  const BigInt& operator()(long n) const { return f[static_cast<std::size_t>(n)]; }
};

BigInt poch_int(long x, long n) {
  BigInt r = 1;
  for (long i = 0; i < n; ++i) r *= x + i;
  return r;
}

double a1_term_window(long a, long k, long j, const PsiTables& psi, const Factorials& fact) {
  Rational c = Rational(2 * (2 * a + 4 * k + 1)) * ((j % 2 == 0) ? 1 : -1) * poch_int(j + 1, 2) *
               poch_int(a + j + 1, 2);
  c /= Rational(fact(2 * k - j) * fact(j - 2 * k + 2)) * poch_int(2 * a + j + 2 * k + 1, 3);
  const double d =
      psi.p0(a + j + 3) - psi.p0(2 * a + j + 2 * k + 4) - psi.p0(j - 2 * k + 3) + psi.p0(j + 3);
  const double br = d * d - psi.p1(2 * a + j + 2 * k + 4) + psi.p1(a + j + 3) -
                    psi.p1(j - 2 * k + 3) + psi.p1(j + 3);
  return to_double(c) * br;
}

double a1_per_k(long a, long k, const PsiTables& psi, const Factorials& fact) {
  NeumaierSum acc;
  for (long j = std::max(2 * k - 2, 0L); j <= 2 * k; ++j) {
    acc.add(a1_term_window(a, k, j, psi, fact));
  }
  for (long j = 0; j <= 2 * k - 3; ++j) {
    Rational c = Rational(4 * (2 * a + 4 * k + 1)) * poch_int(j + 1, 2) * poch_int(a + j + 1, 2);
    c /= Rational(poch_int(2 * k - j - 2, 3)) * poch_int(2 * a + j + 2 * k + 1, 3);
    const double br =
        psi.p0(2 * a + j + 2 * k + 4) - psi.p0(a + j + 3) + psi.p0(2 * k - j - 2) - psi.p0(j + 3);
    acc.add(to_double(c) * br);
  }
  return acc.value();
}

Rational a2_prefactor(long a, long k, const Factorials& fact) {
  return Rational(BigInt(2 * a + 4 * k + 1) * fact(2 * k) * fact(2 * a + 2 * k)) /
         Rational(fact(2 * a + 4 * k + 3));
}

double a2_per_k(long a, long k, const PsiTables& psi, const Factorials& fact) {
  const Rational P = a2_prefactor(a, k, fact);
  const double psi1_big = psi.p1(2 * a + 4 * k + 4);
  NeumaierSum acc;
  {
    const double x = psi.p0(a + 2 * k + 2) - psi.p0(2 * a + 4 * k + 4);
    const Rational g2 = Rational(fact(a + 2 * k + 1) * fact(a + 2 * k + 1));
    for (long i = 0; i <= 2 * k; ++i) {
      Rational c = P * 2 * (i + 1) * (2 * k - i + 1) * g2;
      c /= Rational(fact(i) * fact(a + i) * fact(2 * k - i) * fact(a + 2 * k - i));
      const double br = (x - psi.p0(2) + psi.p0(2 * k - i + 2)) * (x + psi.p0(i + 2) - psi.p0(2)) -
                        psi1_big;
      acc.add(to_double(c) * br);
    }
  }
  const Rational g13 = Rational(fact(a + 2 * k) * fact(a + 2 * k + 2));
  const double xa = psi.p0(a + 2 * k + 1) - psi.p0(2 * a + 4 * k + 4);
  const double xb = psi.p0(a + 2 * k + 3) - psi.p0(2 * a + 4 * k + 4);
  for (long j = 1; j <= 2 * k; ++j) {  // j = 0 vanishes: 1/Gamma(0)
    Rational c = P * (j + 1) * g13;
    c /= Rational(fact(j - 1) * fact(a + j) * fact(2 * k - j) * fact(a - j + 2 * k));
    const double br =
        (xa + psi.p0(2 * k - j + 2) - psi.p0(1)) * (xb + psi.p0(j + 2) - psi.p0(3)) - psi1_big;
    acc.add(-to_double(c) * br);
  }
  for (long j = 0; j <= 2 * k - 1; ++j) {  // j = 2k vanishes: 1/Gamma(0)
    Rational c = P * (2 * k - j + 1) * g13;
    c /= Rational(fact(j) * fact(a + j) * fact(2 * k - j - 1) * fact(2 * k - j + a));
    const double br =
        (xb + psi.p0(2 * k - j + 2) - psi.p0(3)) * (xa + psi.p0(j + 2) - psi.p0(1)) - psi1_big;
    acc.add(-to_double(c) * br);
  }
  const Rational p4 = 4 * P;
  for (long j = 0; j <= 2 * k; ++j) {
    for (long i = 0; i + j + 2 <= 2 * k; ++i) {
      Rational c = p4 * (2 * k - i - j - 1) * (i + j + 3) *
                   Rational(fact(a - j + 2 * k - 1) * fact(a + j + 2 * k + 3));
      c /= Rational(fact(i) * fact(2 * k - i) * fact(a + i + j + 2) * fact(a - i - j + 2 * k - 2)) *
           poch_int(j + 1, 3);
      const double br =
          psi.p0(a + j + 2 * k + 4) - psi.p0(2 * a + 4 * k + 4) + psi.p0(i + j + 4) - psi.p0(j + 4);
      acc.add(to_double(c) * br);
    }
  }
  return acc.value();
}

double ic_per_k(long a, long k, const PsiTables& psi) {
  NeumaierSum acc;
  for (long j = 2 * k - 1; j <= 2 * k; ++j) {
    Rational c = Rational(2 * (2 * a + 4 * k + 1)) * ((j % 2 == 0) ? 1 : -1) * (j + 1) * (a + j + 1);
    c /= poch_int(2 * a + j + 2 * k + 1, 2);
    const double d =
        psi.p0(j + 2) - psi.p0(2 * a + j + 2 * k + 3) + psi.p0(a + j + 2) - psi.p0(j - 2 * k + 2);
    const double br = d * d + psi.p1(a + j + 2) - psi.p1(2 * a + j + 2 * k + 3) + psi.p1(j + 2) -
                      psi.p1(j - 2 * k + 2);
    acc.add(to_double(c) * br);
  }
  for (long j = 0; j <= 2 * k - 2; ++j) {
    Rational c = Rational(4 * (2 * a + 4 * k + 1)) * (j + 1) * (a + j + 1);
    c /= Rational(poch_int(2 * k - j - 1, 2)) * poch_int(2 * a + j + 2 * k + 1, 2);
    const double br =
        psi.p0(a + j + 2) - psi.p0(2 * a + j + 2 * k + 3) - psi.p0(2 * k - j - 1) + psi.p0(j + 2);
    acc.add(to_double(c) * br);
  }
  return acc.value();
}

}  // namespace

SumEvalReport sum_A1(const EnsembleParams& e) {
  const long m = e.m, a = e.a();
  const PsiTables psi(2 * a + 4 * m + 4);
  const Factorials fact(2 * a + 4 * m + 4);
  const auto per_k = parallel_map(static_cast<std::size_t>(m), [&](std::size_t k) {
    return a1_per_k(a, static_cast<long>(k), psi, fact);
  });
  SumEvalReport r;
  r.value = pairwise_sum(per_k);
  for (long k = 0; k < m; ++k) {
    r.terms_evaluated += (k == 0 ? 1 : 3) + std::max(2 * k - 2, 0L);
    if (k == 0) r.indeterminacies_resolved += 2;  // j = -2, -1 rows vanish
  }
  return r;
}

SumEvalReport sum_A2(const EnsembleParams& e) {
  const long m = e.m, a = e.a();
  const PsiTables psi(2 * a + 4 * m + 4);
  const Factorials fact(2 * a + 4 * m + 4);
  const auto per_k = parallel_map(static_cast<std::size_t>(m), [&](std::size_t k) {
    return a2_per_k(a, static_cast<long>(k), psi, fact);
  });
  SumEvalReport r;
  r.value = pairwise_sum(per_k);
  for (long k = 0; k < m; ++k) {
    const long inner = 2 * k + 1;
    long triple = 0;
    for (long j = 0; j <= 2 * k; ++j) triple += std::max(2 * k - j - 1, 0L);
    r.terms_evaluated += inner + (inner - 1) + (inner - 1) + triple;
    r.indeterminacies_resolved += 2;  // j = 0 and j = 2k rows
  }
  return r;
}

double mean_integral_bracket(long a, long k) {
  if (a == 0 && k == 0) return -0.5;  // analytic limit; divergences cancel
  const double dk = static_cast<double>(k), da = static_cast<double>(a);
  double v = 1.0 + sf::digamma_int(2 * k + a) + sf::digamma_int(2 * k + 2 * a) -
             2.0 * sf::digamma_int(4 * k + 2 * a);
  v += 0.5 * (1.0 / (dk + da) - da / (2 * dk + da) - da / (2 * dk + da + 1) -
              2.0 / (4 * dk + 2 * da + 1));
  return v;
}

double mean_entropy_sums(const EnsembleParams& e) {
  NeumaierSum acc;
  for (long k = 0; k < e.m; ++k) acc.add(-mean_integral_bracket(e.a(), k));
  return acc.value();
}

SumEvalReport sum_B1(const EnsembleParams& e) {
  SumEvalReport r;
  NeumaierSum acc;
  for (long k = 0; k < e.m; ++k) {
    const double b = mean_integral_bracket(e.a(), k);
    acc.add(b * b);
    ++r.terms_evaluated;
  }
  if (e.a() == 0) r.indeterminacies_resolved = 1;  // k = 0 bracket limit
  r.value = acc.value();
  return r;
}

SumEvalReport sum_B2(const EnsembleParams& e) {
  const long m = e.m, a = e.a();
  const Factorials fact(2 * a + 4 * m);
  SumEvalReport r;
  NeumaierSum acc;
  for (long k = 0; k < m; ++k) {
    for (long j = 1; j <= m - k - 1; ++j) {
      Rational c = Rational(fact(2 * a + 2 * k) * fact(2 * j + 2 * k)) *
                   Rational(BigInt(2 * a + 4 * k + 1) * (2 * a + 4 * j + 4 * k + 1));
      c /= Rational(2 * fact(2 * k) * fact(2 * a + 2 * j + 2 * k)) *
           Rational(BigInt(j) * j * (2 * j - 1) * (2 * j - 1) * (2 * j + 1) * (2 * j + 1));
      const BigInt poly = 2 * a * a * j + a * a + 2 * a * j * j + 4 * a * j * k + 3 * a * j +
                          4 * a * k + a + 2 * j * j + 4 * j * k + j + 4 * k * k + 2 * k;
      const BigInt den = BigInt(a + j + 2 * k) * (a + j + 2 * k) * (a + j + 2 * k + 1) *
                         (a + j + 2 * k + 1) * (2 * a + 2 * j + 4 * k + 1) *
                         (2 * a + 2 * j + 4 * k + 1);
      c *= Rational(poly * poly, den);
      acc.add(to_double(c));
      ++r.terms_evaluated;
    }
  }
  r.value = acc.value();
  return r;
}

SumEvalReport sum_IC(const EnsembleParams& e) {
  const long m = e.m, a = e.a();
  const PsiTables psi(2 * a + 4 * m + 4);
  SumEvalReport r;
  const double lead_d = psi.p0(a + 2) - psi.p0(2 * a + 3);
  const double lead = lead_d * lead_d + psi.p1(a + 2) - psi.p1(2 * a + 3);
  ++r.terms_evaluated;
  std::vector<double> per_k(static_cast<std::size_t>(m));
  per_k[0] = lead;
  if (m > 1) {
    const auto rest = parallel_map(static_cast<std::size_t>(m - 1), [&](std::size_t kk) {
      return ic_per_k(a, static_cast<long>(kk) + 1, psi);
    });
    for (long k = 1; k < m; ++k) {
      per_k[static_cast<std::size_t>(k)] = rest[static_cast<std::size_t>(k - 1)];
      r.terms_evaluated += 2 + (2 * k - 1);
    }
  }
  r.value = pairwise_sum(per_k);
  return r;
}

SecondOrderStatistics assemble(const EnsembleParams& e) {
  SecondOrderStatistics s;
  s.a1 = sum_A1(e);
  s.a2 = sum_A2(e);
  s.b1 = sum_B1(e);
  s.b2 = sum_B2(e);
  s.ic = sum_IC(e);
  s.i_a = s.a1.value + s.a2.value;
  s.i_b = s.b1.value + s.b2.value;
  s.i_c = s.ic.value;
  s.variance = s.i_a - s.i_b;
  s.capacity = s.i_c - s.i_a;
  return s;
}

double sum_A1_perturbed(const EnsembleParams& e, double eps) {
  // Exact value plus the k = 0 boundary rows (j = -2, -1) evaluated with the
  // vanishing linear factors shifted by eps.
  double total = sum_A1(e).value;
  const long a = e.a();
  const PsiTables psi(2 * a + 8);
  for (long j = -2; j <= -1; ++j) {
    const double je = static_cast<double>(j) + eps;
    const double num = (je + 1.0) * (je + 2.0) * (a + je + 1.0) * (a + je + 2.0);
    const double den = std::tgamma(-je + 1.0) * std::tgamma(je + 3.0) * (2 * a + je + 1.0) *
                       (2 * a + je + 2.0) * (2 * a + je + 3.0);
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    const double d = psi.p0(a + j + 3) - psi.p0(2 * a + j + 4) - psi.p0(j + 3) + psi.p0(j + 3);
    const double br =
        d * d - psi.p1(2 * a + j + 4) + psi.p1(a + j + 3) - psi.p1(j + 3) + psi.p1(j + 3);
    total += 2.0 * (2 * a + 1) * sgn * num / den * br;
  }
  return total;
}

double sum_A2_perturbed(const EnsembleParams& e, double eps) {
  // Exact value plus the boundary rows of the second (j = 0) and third
  // (j = 2k) single sums with 1/Gamma(eps) in place of 1/Gamma(0).
  const long m = e.m, a = e.a();
  const PsiTables psi(2 * a + 4 * m + 4);
  const Factorials fact(2 * a + 4 * m + 4);
  double total = sum_A2(e).value;
  const double inv_gamma_eps = 1.0 / std::tgamma(eps);
  for (long k = 0; k < m; ++k) {
    const double p = to_double(a2_prefactor(a, k, fact));
    const double psi1_big = psi.p1(2 * a + 4 * k + 4);
    const double xa = psi.p0(a + 2 * k + 1) - psi.p0(2 * a + 4 * k + 4);
    const double xb = psi.p0(a + 2 * k + 3) - psi.p0(2 * a + 4 * k + 4);
    const double g13 = to_double(Rational(fact(a + 2 * k) * fact(a + 2 * k + 2)));
    {  // second sum, j = 0
      const double c = p * 1.0 * g13 * inv_gamma_eps /
                       (to_double(Rational(fact(a) * fact(2 * k) * fact(a + 2 * k))));
      const double br =
          (xa + psi.p0(2 * k + 2) - psi.p0(1)) * (xb + psi.p0(2) - psi.p0(3)) - psi1_big;
      total += -c * br;
    }
    {  // third sum, j = 2k
      const double c = p * 1.0 * g13 * inv_gamma_eps /
                       (to_double(Rational(fact(2 * k) * fact(a + 2 * k) * fact(a))));
      const double br =
          (xb + psi.p0(2) - psi.p0(3)) * (xa + psi.p0(2 * k + 2) - psi.p0(1)) - psi1_big;
      total += -c * br;
    }
  }
  return total;
}

double semi_closed_a0(long n, SemiClosedPart which) {
  if (n < 1) throw std::domain_error("semi_closed_a0: need n >= 1");
  const PsiTables psi(4 * n + 1);
  NeumaierSum basis;
  for (long k = 1; k <= n; ++k) {
    basis.add(psi.p0(2 * k) / static_cast<double>(k));
    basis.add(-psi.p0(4 * k) / static_cast<double>(2 * k));
    basis.add(psi.p0(4 * k) / static_cast<double>(2 * k + 1));
  }
  const double s = basis.value();
  const double dn = static_cast<double>(n);
  const double p0n = psi.p0(n), p02n = psi.p0(2 * n), p04n = psi.p0(4 * n);
  const double p1n = psi.p1(n), p12n = psi.p1(2 * n), p14n = psi.p1(4 * n);
  const double p0_half = sf::polygamma_shifted(0, n, Rational(1, 2));   // psi0(n + 1/2)
  const double p0_quarter = sf::polygamma_shifted(0, n, Rational(1, 4));  // psi0(n + 1/4)
  const double psi0_1 = -sf::kEulerGamma;
  const double psi1_1 = sf::kPiSquared / 6.0;
  const double ln2 = sf::kLn2;
  NeumaierSum acc;
  acc.add(s);
  switch (which) {
    case SemiClosedPart::IA:
      acc.add(-(24 * dn * dn - 12 * dn + 1) / (4 * (4 * dn - 1)) * p12n);
      acc.add(-p1n / 4);
      acc.add((4 * dn - 1) * p04n * p04n);
      acc.add(2 * (1 - 4 * dn) * p02n * p04n);
      acc.add((8 * dn - 3) / 2 * p02n * p02n);
      acc.add(p0n * p02n);
      acc.add(-p0n * p0n / 2);
      acc.add(-(16 * dn * dn * dn + 8 * dn * dn - 1) / (2 * dn * (2 * dn + 1)) * p04n);
      acc.add((8 * dn + 1) / 2 * p02n);
      acc.add(-(1 / (2 * dn) + ln2) * p0n);
      acc.add(-p0n * p0_half / 2);
      acc.add(-(2 * dn + 1) / (2 * dn) * p0_half);
      acc.add(p0_quarter / 2);
      acc.add(dn * (5 * dn - 2) / (4 * dn - 1) * psi1_1);
      acc.add((0.5 + ln2) * psi0_1);
      acc.add(sf::kDigammaHalf * psi0_1 / 2);
      acc.add(sf::kDigammaHalf);
      acc.add(-sf::kDigammaQuarter / 2);
      acc.add(-ln2 / dn);
      acc.add(-dn + 2);
      break;
    case SemiClosedPart::IB:
      acc.add((4 * dn - 1) / 2 * p14n);
      acc.add(-(104 * dn * dn - 60 * dn + 7) / (8 * (4 * dn - 1)) * p12n);
      acc.add(-3.0 / 8.0 * p1n);
      acc.add((4 * dn - 1) * p04n * p04n);
      acc.add(-2 * (4 * dn - 1) * p02n * p04n);
      acc.add((8 * dn - 3) / 2 * p02n * p02n);
      acc.add(p0n * p02n);
      acc.add(-p0n * p0n / 2);
      acc.add((-16 * dn * dn * dn - 6 * dn * dn + dn + 1) / (2 * dn * (2 * dn + 1)) * p04n);
      acc.add(4 * dn * p02n);
      acc.add(-(1 / (2 * dn) + ln2) * p0n);
      acc.add(-p0n * p0_half / 2);
      acc.add(-(2 * dn + 1) / (2 * dn) * p0_half);
      acc.add(p0_quarter / 2);
      acc.add((5 * dn - 2) * dn / (4 * dn - 1) * psi1_1);
      acc.add((0.5 + ln2) * psi0_1);
      acc.add(sf::kDigammaHalf * psi0_1 / 2);
      acc.add(-sf::kDigammaQuarter / 2);
      acc.add(sf::kDigammaHalf);
      acc.add(-ln2 / dn);
      acc.add(-dn + 2);
      break;
    case SemiClosedPart::IC:
      acc.add(-(8 * dn - 3) / 4 * p12n);
      acc.add(-3.0 / 8.0 * p1n);
      acc.add((4 * dn - 1) * p04n * p04n);
      acc.add(-2 * (4 * dn - 1) * p02n * p04n);
      acc.add((8 * dn - 3) / 2 * p02n * p02n);
      acc.add(-(16 * dn * dn * dn + 8 * dn * dn - 1) / (2 * dn * (2 * dn + 1)) * p04n);
      acc.add((8 * dn * dn - 3 * dn - 2) / (2 * dn) * p02n);
      acc.add(p0n);
      acc.add(p0_quarter / 2);
      acc.add((16 * dn - 3) / 8 * psi1_1);
      acc.add(psi0_1 * psi0_1 / 2);
      acc.add(3.0 / 2.0 * psi0_1);
      acc.add(-sf::kDigammaQuarter / 2);
      acc.add(-2 * dn + 2.5);
      break;
  }
  return acc.value();
}

namespace {

using Rng = std::mt19937_64;

Rational quarter_grid(Rng& rng, long lo_quarters, long hi_quarters) {
  std::uniform_int_distribution<long> dist(lo_quarters, hi_quarters);
  return Rational(dist(rng), 4);
}

double psi_q(int order, const Rational& arg) { return sf::polygamma_quarter_grid(order, arg); }

double rel_err(double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale < 1e-280) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

std::string fmt_params(long m, const Rational& a, const Rational& b) {
  std::ostringstream os;
  os << "m=" << m << " a=" << to_double(a) << " b=" << to_double(b);
  return os.str();
}

struct SuiteRunner {
  Rng rng;
  long trials;
  std::vector<IdentityCheck> out;

  void run(const std::string& name,
           const std::function<std::pair<double, std::string>(Rng&)>& draw_and_check) {
    IdentityCheck c;
    c.name = name;
    c.trials = trials;
    for (long t = 0; t < trials; ++t) {
      auto [err, params] = draw_and_check(rng);
      if (err > c.max_rel_err) {
        c.max_rel_err = err;
        c.worst_params = params;
      }
    }
    c.pass = c.max_rel_err <= 1e-10;
    out.push_back(std::move(c));
  }
};

}  // namespace

IdentityReport identity_suite(long trials, std::uint64_t seed) {
  if (trials < 1) throw std::domain_error("identity_suite: need trials >= 1");
  SuiteRunner runner{Rng(seed), trials, {}};
  std::uniform_int_distribution<long> m_dist(1, 12);
  std::uniform_int_distribution<long> k_dist(1, 40);

  const auto draw_ab_distinct = [&](Rng& rng, Rational& a, Rational& b) {
    a = quarter_grid(rng, 0, 32);
    do {
      b = quarter_grid(rng, 0, 32);
    } while (b == a);
  };

  runner.run("digamma_sum", [&](Rng& rng) {
    const long m = m_dist(rng);
    const Rational a = quarter_grid(rng, 0, 32);
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(psi_q(0, a + k));
    const double rhs =
        to_double(Rational(m) + a) * psi_q(0, a + m + 1) - to_double(a) * psi_q(0, a + 1) - m;
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, a, 0));
  });
  runner.run("trigamma_sum", [&](Rng& rng) {
    const long m = m_dist(rng);
    const Rational a = quarter_grid(rng, 0, 32);
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(psi_q(1, a + k));
    const double rhs = to_double(Rational(m) + a) * psi_q(1, a + m + 1) -
                       to_double(a) * psi_q(1, a + 1) + psi_q(0, a + m + 1) - psi_q(0, a + 1);
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, a, 0));
  });
  runner.run("digamma_over_shifted_index", [&](Rng& rng) {
    const long m = m_dist(rng);
    const Rational a = quarter_grid(rng, 0, 32);
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(psi_q(0, a + k) / to_double(a + k));
    const double pa = psi_q(0, a + 1), pm = psi_q(0, a + m + 1);
    const double rhs = 0.5 * (psi_q(1, a + m + 1) - psi_q(1, a + 1) + pm * pm - pa * pa);
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, a, 0));
  });
  runner.run("digamma_reversed_harmonic", [&](Rng& rng) {
    const long m = m_dist(rng);
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(sf::digamma_int(m + 1 - k) / static_cast<double>(k));
    const double pm = sf::digamma_int(m + 1);
    const double rhs = pm * pm - sf::digamma_int(1) * pm + sf::trigamma_int(m + 1) - sf::trigamma_int(1);
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, 0, 0));
  });
  runner.run("digamma_shifted_harmonic", [&](Rng& rng) {
    const long m = m_dist(rng);
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(sf::digamma_int(m + 1 + k) / static_cast<double>(k));
    const double pm = sf::digamma_int(m + 1);
    const double rhs =
        pm * pm - sf::digamma_int(1) * pm - sf::trigamma_int(m + 1) / 2 + sf::trigamma_int(1) / 2;
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, 0, 0));
  });
  runner.run("digamma_product_sum", [&](Rng& rng) {
    const long m = m_dist(rng);
    Rational a, b;
    draw_ab_distinct(rng, a, b);
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(psi_q(0, a + k) * psi_q(0, b + k));
    NeumaierSum mixed;
    for (long k = 1; k <= m - 1; ++k) mixed.add(psi_q(0, a + k) / to_double(b + k));
    const double rhs = to_double(b - a) * mixed.value() +
                       to_double(Rational(m) + a) * psi_q(0, a + m) * psi_q(0, b + m) -
                       to_double(a) * psi_q(0, a + 1) * psi_q(0, b + 1) -
                       to_double(Rational(m) + a - 1) * psi_q(0, a + m) +
                       to_double(a) * psi_q(0, a + 1) -
                       to_double(Rational(m) + b) * psi_q(0, b + m) +
                       to_double(b + 1) * psi_q(0, b + 1) + 2 * m - 2;
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, a, b));
  });
  runner.run("digamma_cross_harmonic", [&](Rng& rng) {
    const long m = m_dist(rng);
    Rational a, b;
    draw_ab_distinct(rng, a, b);
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(psi_q(0, b + k) / to_double(a + k));
    NeumaierSum swapped;
    for (long k = 1; k <= m; ++k) swapped.add(psi_q(0, a + k) / to_double(b + k));
    const double rhs = -swapped.value() + psi_q(0, a + m + 1) * psi_q(0, b + m + 1) -
                       psi_q(0, a + 1) * psi_q(0, b + 1) +
                       (psi_q(0, a + m + 1) - psi_q(0, b + m + 1) - psi_q(0, a + 1) +
                        psi_q(0, b + 1)) /
                           to_double(a - b);
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, a, b));
  });
  runner.run("digamma_descending_harmonic", [&](Rng& rng) {
    const long m = m_dist(rng);
    const Rational a = Rational(m) + quarter_grid(rng, 1, 32);  // a > m
    NeumaierSum lhs;
    for (long k = 1; k <= m; ++k) lhs.add(psi_q(0, a + 1 - k) / static_cast<double>(k));
    NeumaierSum shifted;
    for (long k = 1; k <= m; ++k) shifted.add(psi_q(0, a - m + k) / static_cast<double>(k));
    const double dam = psi_q(0, a - m), da1 = psi_q(0, a + 1);
    const double rhs = -shifted.value() +
                       (dam + da1) * (sf::digamma_int(m + 1) - sf::digamma_int(1)) +
                       0.5 * ((dam - da1) * (dam - da1) + psi_q(1, a + 1) - psi_q(1, a - m));
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, a, 0));
  });
  for (const long mult : {2L, 4L}) {
    runner.run("duplication_psi0_m" + std::to_string(mult), [&, mult](Rng& rng) {
      const long k = k_dist(rng);
      NeumaierSum rhs;
      for (long i = 0; i < mult; ++i) rhs.add(psi_q(0, Rational(k) + Rational(i, mult)));
      const double r = std::log(static_cast<double>(mult)) + rhs.value() / static_cast<double>(mult);
      return std::make_pair(rel_err(sf::digamma_int(mult * k), r), fmt_params(k, Rational(mult), 0));
    });
    runner.run("duplication_psi1_m" + std::to_string(mult), [&, mult](Rng& rng) {
      const long k = k_dist(rng);
      NeumaierSum rhs;
      for (long i = 0; i < mult; ++i) rhs.add(psi_q(1, Rational(k) + Rational(i, mult)));
      const double r = rhs.value() / static_cast<double>(mult * mult);
      return std::make_pair(rel_err(sf::trigamma_int(mult * k), r), fmt_params(k, Rational(mult), 0));
    });
  }

  // unit-argument 2F1 sum identity of the A2 derivation and its psi0-weighted
  // derivatives in b and c
  const auto id1_pair = [&](Rng& rng, long& m, Rational& b, Rational& c) {
    m = m_dist(rng);
    b = quarter_grid(rng, 1, 32);
    c = quarter_grid(rng, 1, 32);
  };
  const auto g = [](double x) { return std::lgamma(x); };
  const auto id1_rhs_front = [&](long m, const Rational& b, const Rational& c) {
    return std::exp(g(to_double(b + c) + 2 * m) - g(m + 1.0) - g(to_double(b) + m + 1) -
                    g(to_double(c) + m) - g(to_double(b + c) + m));
  };
  const auto id1_lhs_weight = [&](long m, const Rational& b, const Rational& c, long k) {
    return std::exp(-g(k + 1.0) - g(to_double(c) + k) - g(m - k + 1.0) -
                    g(to_double(b) + m + 1 - k));
  };
  runner.run("a2_id1", [&](Rng& rng) {
    long m;
    Rational b, c;
    id1_pair(rng, m, b, c);
    NeumaierSum lhs;
    for (long k = 0; k <= m; ++k) lhs.add(id1_lhs_weight(m, b, c, k));
    return std::make_pair(rel_err(lhs.value(), id1_rhs_front(m, b, c)), fmt_params(m, b, c));
  });
  runner.run("a2_id1_db", [&](Rng& rng) {
    long m;
    Rational b, c;
    id1_pair(rng, m, b, c);
    NeumaierSum lhs;
    for (long k = 0; k <= m; ++k) {
      lhs.add(psi_q(0, b + m + 1 - k) * id1_lhs_weight(m, b, c, k));
    }
    const double rhs = id1_rhs_front(m, b, c) * (psi_q(0, b + c + m) - psi_q(0, b + c + 2 * m) +
                                                 psi_q(0, b + m + 1));
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, b, c));
  });
  runner.run("a2_id1_dc", [&](Rng& rng) {
    long m;
    Rational b, c;
    id1_pair(rng, m, b, c);
    NeumaierSum lhs;
    for (long k = 0; k <= m; ++k) lhs.add(psi_q(0, c + k) * id1_lhs_weight(m, b, c, k));
    const double rhs = id1_rhs_front(m, b, c) * (psi_q(0, b + c + m) - psi_q(0, b + c + 2 * m) +
                                                 psi_q(0, c + m));
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, b, c));
  });
  runner.run("a2_id1_dbdc", [&](Rng& rng) {
    long m;
    Rational b, c;
    id1_pair(rng, m, b, c);
    NeumaierSum lhs;
    for (long k = 0; k <= m; ++k) {
      lhs.add(psi_q(0, c + k) * psi_q(0, b + m + 1 - k) * id1_lhs_weight(m, b, c, k));
    }
    const double base = psi_q(0, b + c + m) - psi_q(0, b + c + 2 * m);
    const double rhs = id1_rhs_front(m, b, c) *
                       ((base + psi_q(0, b + m + 1)) * (base + psi_q(0, c + m)) -
                        psi_q(1, b + c + m) + psi_q(1, b + c + 2 * m));
    return std::make_pair(rel_err(lhs.value(), rhs), fmt_params(m, b, c));
  });

  IdentityReport report;
  report.checks = std::move(runner.out);
  report.trials = trials;
  report.all_pass = true;
  for (const auto& c : report.checks) {
    report.max_rel_err = std::max(report.max_rel_err, c.max_rel_err);
    report.all_pass = report.all_pass && c.pass;
  }
  return report;
}

}  // namespace fermirmt
