#pragma once

#include <complex>
#include <concepts>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "bikoeff/error.hpp"

namespace bikoeff {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class ScalarKind { ExactRational, ComplexFloat, Symbolic };

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr ScalarKind kind = ScalarKind::ExactRational;
  static Rational from_rational(const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool is_one(const Rational& x) { return x == 1; }
  static Rational inverse(const Rational& x) {
    if (is_zero(x)) throw DomainError("division by zero");
    return Rational(1) / x;
  }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr ScalarKind kind = ScalarKind::ComplexFloat;
  static Complex from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  // Constant terms of float series come out of arithmetic; 1 is accepted up to rounding.
  static bool is_one(const Complex& x) { return std::abs(x - Complex{1.0, 0.0}) <= 1e-12; }
  static Complex inverse(const Complex& x) {
    if (is_zero(x)) throw DomainError("division by zero");
    return Complex{1.0, 0.0} / x;
  }
};

/// Commutative ring elements usable as power-series coefficients.
template <class T>
concept SeriesScalar = requires(const T& a, const T& b, const Rational& q) {
  { ScalarTraits<T>::kind } -> std::convertible_to<ScalarKind>;
  { ScalarTraits<T>::from_rational(q) } -> std::convertible_to<T>;
  { ScalarTraits<T>::is_zero(a) } -> std::convertible_to<bool>;
  { ScalarTraits<T>::inverse(a) } -> std::convertible_to<T>;
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
};

/// Scalars with a division operator and an ordering-free field structure.
template <class T>
concept FieldScalar = SeriesScalar<T> && (std::same_as<T, Rational> || std::same_as<T, Complex>);

template <SeriesScalar T>
T scalar_from(const Rational& q) {
  return ScalarTraits<T>::from_rational(q);
}

/// Canonical num/den; gmpxx's two-argument constructor does not reduce.
inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

template <SeriesScalar T>
T scalar_from(long num, long den = 1) {
  return ScalarTraits<T>::from_rational(make_rational(num, den));
}

/// Parses "3", "-1/2", "0.25", "1e-3", "2.5E+2" exactly.
Rational parse_rational(std::string_view text);

/// "3", "-1/2"; always the canonical reduced fraction.
std::string format_rational(const Rational& q);

}  // namespace bikoeff
