#include "fermirmt/closed_form.hpp"

#include <sstream>
#include <stdexcept>

#include "fermirmt/special_functions.hpp"
#include "fermirmt/summation.hpp"

namespace fermirmt {

namespace {

void validate_psi_arg(const Rational& a) {
  if (a <= 0) throw std::domain_error("PolyBasisTerm: polygamma argument must be positive");
  const BigInt den = boost::multiprecision::denominator(a);
  if (den != 1 && den != 2 && den != 4) {
    throw std::domain_error("PolyBasisTerm: polygamma argument must be integer or integer +- 1/4, 1/2");
  }
}

}  // namespace

PolyBasisTerm PolyBasisTerm::digamma(Rational a) {
  validate_psi_arg(a);
  return {BasisKind::Digamma, std::move(a)};
}

PolyBasisTerm PolyBasisTerm::trigamma(Rational a) {
  validate_psi_arg(a);
  return {BasisKind::Trigamma, std::move(a)};
}

double PolyBasisTerm::value() const {
  switch (kind) {
    case BasisKind::One: return 1.0;
    case BasisKind::EulerGamma: return sf::kEulerGamma;
    case BasisKind::Pi2: return sf::kPiSquared;
    case BasisKind::Ln2: return sf::kLn2;
    case BasisKind::Digamma: return sf::polygamma_quarter_grid(0, arg);
    case BasisKind::Trigamma: return sf::polygamma_quarter_grid(1, arg);
  }
  throw std::logic_error("PolyBasisTerm: unknown kind");
}

std::string PolyBasisTerm::name() const {
  switch (kind) {
    case BasisKind::One: return "one";
    case BasisKind::EulerGamma: return "euler_gamma";
    case BasisKind::Pi2: return "pi^2";
    case BasisKind::Ln2: return "ln2";
    case BasisKind::Digamma: return "digamma(" + rational_to_string(arg) + ")";
    case BasisKind::Trigamma: return "trigamma(" + rational_to_string(arg) + ")";
  }
  return "?";
}

ClosedFormValue ClosedFormValue::constant(const Rational& c) {
  ClosedFormValue v;
  v.add_term(PolyBasisTerm::one(), c);
  return v;
}

ClosedFormValue& ClosedFormValue::add_term(const PolyBasisTerm& term, const Rational& coeff) {
  if (coeff == 0) return *this;
  if (term.kind == BasisKind::Digamma || term.kind == BasisKind::Trigamma) {
    validate_psi_arg(term.arg);
  }
  auto [it, inserted] = terms_.emplace(term, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

Rational ClosedFormValue::coefficient(const PolyBasisTerm& term) const {
  const auto it = terms_.find(term);
  return it == terms_.end() ? Rational(0) : it->second;
}

ClosedFormValue& ClosedFormValue::operator+=(const ClosedFormValue& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

ClosedFormValue& ClosedFormValue::operator-=(const ClosedFormValue& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, -c);
  return *this;
}

ClosedFormValue& ClosedFormValue::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, c] : terms_) c *= s;
  return *this;
}

double ClosedFormValue::evaluate() const {
  NeumaierSum acc;
  for (const auto& [t, c] : terms_) acc.add(to_double(c) * t.value());
  return acc.value();
}

ClosedFormValue ClosedFormValue::canonicalized() const {
  ClosedFormValue out;
  for (const auto& [t, c] : terms_) {
    const bool integer_arg = boost::multiprecision::denominator(t.arg) == 1;
    if (t.kind == BasisKind::Digamma && integer_arg) {
      // psi0(l) = -gamma + H_{l-1}
      const long l = static_cast<long>(boost::multiprecision::numerator(t.arg));
      Rational harmonic = 0;
      for (long k = 1; k < l; ++k) harmonic += Rational(1, k);
      out.add_term(PolyBasisTerm::euler_gamma(), -c);
      out.add_term(PolyBasisTerm::one(), c * harmonic);
    } else if (t.kind == BasisKind::Trigamma && integer_arg) {
      // psi1(l) = pi^2/6 - sum_{k<l} 1/k^2
      const long l = static_cast<long>(boost::multiprecision::numerator(t.arg));
      Rational partial = 0;
      for (long k = 1; k < l; ++k) partial += Rational(1, BigInt(k) * k);
      out.add_term(PolyBasisTerm::pi2(), c / 6);
      out.add_term(PolyBasisTerm::one(), -c * partial);
    } else {
      out.add_term(t, c);
    }
  }
  return out;
}

std::string ClosedFormValue::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) os << " + ";
    os << rational_to_string(c) << "*" << t.name();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) {
    os << "/" << boost::multiprecision::denominator(r);
  }
  return os.str();
}

}  // namespace fermirmt
