#pragma once

#include <map>
#include <string>

#include "bikoeff/scalar.hpp"

namespace bikoeff {

/// Multivariate polynomial with exact rational coefficients.
///
/// Used as a symbolic series coefficient so that expansions such as the
/// inverse-function coefficients can be printed and compared term by term.
class Polynomial {
 public:
  /// Variable name -> exponent; exponents are always positive.
  using Monomial = std::map<std::string, unsigned>;

  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants promote implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(const std::string& name);

  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  Rational constant_term() const;

  /// Substitutes every variable; missing variables are an error.
  Rational evaluate(const std::map<std::string, Rational>& values) const;

  friend Polynomial operator+(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator-(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator*(const Polynomial& x, const Polynomial& y);
  friend Polynomial operator-(const Polynomial& x);
  friend bool operator==(const Polynomial& x, const Polynomial& y) = default;

  /// Human-readable form, e.g. "2*a2^2 - a3".
  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::map<Monomial, Rational> terms_;
};

template <>
struct ScalarTraits<Polynomial> {
  static constexpr ScalarKind kind = ScalarKind::Symbolic;
  static Polynomial from_rational(const Rational& q) { return Polynomial(q); }
  static bool is_zero(const Polynomial& x) { return x.is_zero(); }
  static bool is_one(const Polynomial& x) { return x.is_constant() && x.constant_term() == 1; }
  static Polynomial inverse(const Polynomial& x) {
    if (!x.is_constant() || x.is_zero()) throw DomainError("only nonzero constant polynomials are invertible");
    return Polynomial(Rational(1) / x.constant_term());
  }
};

}  // namespace bikoeff
