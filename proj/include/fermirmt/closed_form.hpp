#pragma once

#include <compare>
#include <map>
#include <string>

#include "fermirmt/rational.hpp"

namespace fermirmt {

enum class BasisKind { One, EulerGamma, Pi2, Ln2, Digamma, Trigamma };

// One basis element of a closed-form statistic. `arg` is meaningful for the
// Digamma/Trigamma kinds only and must be a positive quarter-grid rational
// (integer, or integer +- 1/4 or +- 1/2); it is fixed to 0 otherwise so that
// equality is purely structural.
struct PolyBasisTerm {
  BasisKind kind = BasisKind::One;
  Rational arg = 0;

  static PolyBasisTerm one() { return {BasisKind::One, 0}; }
  static PolyBasisTerm euler_gamma() { return {BasisKind::EulerGamma, 0}; }
  static PolyBasisTerm pi2() { return {BasisKind::Pi2, 0}; }
  static PolyBasisTerm ln2() { return {BasisKind::Ln2, 0}; }
  static PolyBasisTerm digamma(Rational a);
  static PolyBasisTerm trigamma(Rational a);

  bool operator==(const PolyBasisTerm& o) const { return kind == o.kind && arg == o.arg; }
  bool operator<(const PolyBasisTerm& o) const {
    if (kind != o.kind) return kind < o.kind;
    return arg < o.arg;
  }

  [[nodiscard]] double value() const;
  [[nodiscard]] std::string name() const;
};

// Exact linear combination of basis terms with big-rational coefficients.
// Terms are kept canonical: one map entry per (kind, arg), zero coefficients
// pruned. Float conversion happens only in evaluate().
class ClosedFormValue {
 public:
  ClosedFormValue() = default;
  static ClosedFormValue constant(const Rational& c);

  ClosedFormValue& add_term(const PolyBasisTerm& term, const Rational& coeff);
  [[nodiscard]] Rational coefficient(const PolyBasisTerm& term) const;
  [[nodiscard]] const std::map<PolyBasisTerm, Rational>& terms() const { return terms_; }

  ClosedFormValue& operator+=(const ClosedFormValue& o);
  ClosedFormValue& operator-=(const ClosedFormValue& o);
  ClosedFormValue& operator*=(const Rational& s);
  friend ClosedFormValue operator+(ClosedFormValue a, const ClosedFormValue& b) { return a += b; }
  friend ClosedFormValue operator-(ClosedFormValue a, const ClosedFormValue& b) { return a -= b; }
  friend ClosedFormValue operator*(const Rational& s, ClosedFormValue v) { return v *= s; }

  bool operator==(const ClosedFormValue& o) const { return terms_ == o.terms_; }

  [[nodiscard]] double evaluate() const;

  // Expands integer-argument Digamma/Trigamma over {One, EulerGamma, Pi2}
  // using the finite-sum forms, merging exactly. Half/quarter arguments are
  // left alone.
  [[nodiscard]] ClosedFormValue canonicalized() const;

  [[nodiscard]] std::string to_string() const;

 private:
  std::map<PolyBasisTerm, Rational> terms_;
};

std::string rational_to_string(const Rational& r);

}  // namespace fermirmt
