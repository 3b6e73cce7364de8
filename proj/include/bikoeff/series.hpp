#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bikoeff/error.hpp"
#include "bikoeff/polynomial.hpp"
#include "bikoeff/scalar.hpp"

namespace bikoeff {

/// Truncation degree used when no order is given: one past a5.
inline constexpr int kDefaultOrder = 6;

/// Formal power series c0 + c1 z + ... + cN z^N, truncated at N = order().
///
/// Values are immutable. Binary arithmetic between two series yields the
/// smaller of the two orders, since coefficients beyond it are unknown.
template <SeriesScalar T>
class Series {
 public:
  using value_type = T;

  explicit Series(std::vector<T> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw DomainError("a series needs at least a constant term");
  }

  static Series zero(int order) { return Series(std::vector<T>(checked_size(order), scalar_from<T>(0))); }

  static Series constant(const T& c, int order) {
    std::vector<T> v(checked_size(order), scalar_from<T>(0));
    v[0] = c;
    return Series(std::move(v));
  }

  /// The series z.
  static Series identity(int order) {
    std::vector<T> v(checked_size(order), scalar_from<T>(0));
    if (order >= 1) v[1] = scalar_from<T>(1);
    return Series(std::move(v));
  }

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }
  const std::vector<T>& coeffs() const noexcept { return c_; }

  /// Coefficient n, or zero when n exceeds the order.
  T coeff_or_zero(int n) const { return n <= order() ? c_[static_cast<std::size_t>(n)] : scalar_from<T>(0); }

  Series truncate(int new_order) const {
    if (new_order > order()) throw DomainError("cannot extend a truncated series");
    return Series(std::vector<T>(c_.begin(), c_.begin() + new_order + 1));
  }

  /// Extends with zero coefficients (caller asserts the unknown tail is zero).
  Series pad(int new_order) const {
    std::vector<T> v = c_;
    v.resize(checked_size(std::max(new_order, order())), scalar_from<T>(0));
    return Series(std::move(v));
  }

  /// Index of the first nonzero coefficient, or nullopt for the zero series.
  std::optional<int> valuation() const {
    for (int n = 0; n <= order(); ++n) {
      if (!ScalarTraits<T>::is_zero(c_[static_cast<std::size_t>(n)])) return n;
    }
    return std::nullopt;
  }

  friend bool operator==(const Series& x, const Series& y) { return x.c_ == y.c_; }

 private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw DomainError("series order must be nonnegative");
    return static_cast<std::size_t>(order) + 1;
  }

  std::vector<T> c_;
};

using RationalSeries = Series<Rational>;
using ComplexSeries = Series<Complex>;
using SymbolicSeries = Series<Polynomial>;

// ---------------------------------------------------------------------------
// Ring operations

template <SeriesScalar T>
Series<T> operator+(const Series<T>& x, const Series<T>& y) {
  int n = std::min(x.order(), y.order());
  std::vector<T> v(static_cast<std::size_t>(n) + 1, scalar_from<T>(0));
  for (int k = 0; k <= n; ++k) v[k] = x[k] + y[k];
  return Series<T>(std::move(v));
}

template <SeriesScalar T>
Series<T> operator-(const Series<T>& x) {
  std::vector<T> v;
  v.reserve(x.coeffs().size());
  for (const T& c : x.coeffs()) v.push_back(-c);
  return Series<T>(std::move(v));
}

template <SeriesScalar T>
Series<T> operator-(const Series<T>& x, const Series<T>& y) {
  return x + (-y);
}

template <SeriesScalar T>
Series<T> operator*(const T& s, const Series<T>& x) {
  std::vector<T> v;
  v.reserve(x.coeffs().size());
  for (const T& c : x.coeffs()) v.push_back(s * c);
  return Series<T>(std::move(v));
}

template <SeriesScalar T>
Series<T> operator+(const Series<T>& x, const T& s) {
  std::vector<T> v = x.coeffs();
  v[0] = v[0] + s;
  return Series<T>(std::move(v));
}

template <SeriesScalar T>
Series<T> operator-(const Series<T>& x, const T& s) {
  std::vector<T> v = x.coeffs();
  v[0] = v[0] - s;
  return Series<T>(std::move(v));
}

namespace detail {

// Cauchy product truncated at `order` (both inputs must reach it).
template <SeriesScalar T>
std::vector<T> convolve(const std::vector<T>& x, const std::vector<T>& y, int order) {
  std::vector<T> v(static_cast<std::size_t>(order) + 1, scalar_from<T>(0));
  for (int i = 0; i <= order; ++i) {
    if (ScalarTraits<T>::is_zero(x[i])) continue;
    for (int j = 0; i + j <= order; ++j) v[i + j] = v[i + j] + x[i] * y[j];
  }
  return v;
}

}  // namespace detail

/// Cauchy product truncated at min(x.order, y.order).
template <SeriesScalar T>
Series<T> mul(const Series<T>& x, const Series<T>& y) {
  return Series<T>(detail::convolve(x.coeffs(), y.coeffs(), std::min(x.order(), y.order())));
}

template <SeriesScalar T>
Series<T> operator*(const Series<T>& x, const Series<T>& y) {
  return mul(x, y);
}

/// Reciprocal 1/y; requires an invertible constant term.
template <SeriesScalar T>
Series<T> reciprocal(const Series<T>& y) {
  if (ScalarTraits<T>::is_zero(y[0])) throw DomainError("non-invertible series");
  const int n = y.order();
  T inv0 = ScalarTraits<T>::inverse(y[0]);
  std::vector<T> r(static_cast<std::size_t>(n) + 1, scalar_from<T>(0));
  r[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    T acc = scalar_from<T>(0);
    for (int j = 1; j <= k; ++j) acc = acc + y[j] * r[k - j];
    r[k] = -(acc * inv0);
  }
  return Series<T>(std::move(r));
}

/// Quotient x / y with x = result * y to min(x.order, y.order).
template <SeriesScalar T>
Series<T> div(const Series<T>& x, const Series<T>& y) {
  if (ScalarTraits<T>::is_zero(y[0])) throw DomainError("non-invertible series");
  const int n = std::min(x.order(), y.order());
  T inv0 = ScalarTraits<T>::inverse(y[0]);
  std::vector<T> q(static_cast<std::size_t>(n) + 1, scalar_from<T>(0));
  for (int k = 0; k <= n; ++k) {
    T acc = x[k];
    for (int j = 1; j <= k; ++j) acc = acc - y[j] * q[k - j];
    q[k] = acc * inv0;
  }
  return Series<T>(std::move(q));
}

template <SeriesScalar T>
Series<T> operator/(const Series<T>& x, const Series<T>& y) {
  return div(x, y);
}

// ---------------------------------------------------------------------------
// Calculus and shifts

template <SeriesScalar T>
Series<T> derivative(const Series<T>& x) {
  if (x.order() == 0) return Series<T>::zero(0);
  std::vector<T> v(static_cast<std::size_t>(x.order()), scalar_from<T>(0));
  for (int k = 1; k <= x.order(); ++k) v[k - 1] = scalar_from<T>(k) * x[k];
  return Series<T>(std::move(v));
}

/// Antiderivative with zero constant term; order grows by one.
template <SeriesScalar T>
Series<T> integrate(const Series<T>& x) {
  std::vector<T> v(static_cast<std::size_t>(x.order()) + 2, scalar_from<T>(0));
  for (int k = 0; k <= x.order(); ++k) v[k + 1] = scalar_from<T>(1, k + 1) * x[k];
  return Series<T>(std::move(v));
}

/// z * x; order grows by one.
template <SeriesScalar T>
Series<T> shift_up(const Series<T>& x) {
  std::vector<T> v;
  v.reserve(x.coeffs().size() + 1);
  v.push_back(scalar_from<T>(0));
  v.insert(v.end(), x.coeffs().begin(), x.coeffs().end());
  return Series<T>(std::move(v));
}

/// x / z for x with zero constant term; order drops by one.
template <SeriesScalar T>
Series<T> shift_down(const Series<T>& x) {
  if (!ScalarTraits<T>::is_zero(x[0])) throw DomainError("shift_down needs a zero constant term");
  if (x.order() == 0) throw DomainError("shift_down of an order-0 series");
  return Series<T>(std::vector<T>(x.coeffs().begin() + 1, x.coeffs().end()));
}

// ---------------------------------------------------------------------------
// Composition and reversion

/// outer(inner(z)). The inner series must vanish at 0.
///
/// The result is exact up to min(inner.order, (outer.order + 1) * v - 1) where
/// v is the valuation of inner: terms of outer beyond its order start at
/// z^((outer.order + 1) * v).
template <SeriesScalar T>
Series<T> compose(const Series<T>& outer, const Series<T>& inner) {
  if (!ScalarTraits<T>::is_zero(inner[0])) throw DomainError("composition needs an inner series with zero constant term");
  int n = inner.order();
  if (auto v = inner.valuation()) {
    long reach = static_cast<long>(outer.order() + 1) * (*v) - 1;
    n = static_cast<int>(std::min<long>(n, reach));
  }
  const auto& in = inner.coeffs();
  std::vector<T> acc(static_cast<std::size_t>(n) + 1, scalar_from<T>(0));
  // Horner: acc = (...(b_K * inner + b_{K-1}) * inner + ...) + b_0
  for (int k = outer.order(); k >= 0; --k) {
    if (k < outer.order()) acc = detail::convolve(acc, in, n);
    acc[0] = acc[0] + outer[k];
  }
  return Series<T>(std::move(acc));
}

/// Compositional inverse g of a normalized f (f(0) = 0, f'(0) = 1), so that
/// f(g(w)) = w to f.order(). Newton iteration on g -> g - (f(g) - w) / f'(g),
/// each step doubling the number of correct coefficients.
template <SeriesScalar T>
Series<T> revert(const Series<T>& f) {
  if (f.order() < 1 || !ScalarTraits<T>::is_zero(f[0])) throw DomainError("reversion needs f(0) = 0");
  if (!ScalarTraits<T>::is_one(f[1])) throw DomainError("reversion needs a normalized series (linear coefficient 1)");
  const int n = f.order();
  const Series<T> id = Series<T>::identity(n);
  const Series<T> df = derivative(f);
  Series<T> g = id;
  for (int correct = 1; correct < n; correct *= 2) {
    Series<T> residual = compose(f, g) - id;
    // f'(g) is known to n - 1; the padded top coefficient only meets zeros of
    // the residual, whose first `correct` coefficients vanish.
    Series<T> slope = compose(df, g).pad(n);
    g = g - div(residual, slope);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Logarithm, exponential, powers

/// log(x) for x with constant term 1.
template <SeriesScalar T>
Series<T> log_series(const Series<T>& x) {
  if (!ScalarTraits<T>::is_one(x[0])) throw DomainError("log needs a constant term equal to 1");
  if (x.order() == 0) return Series<T>::zero(0);
  return integrate(div(derivative(x), x.truncate(x.order() - 1)));
}

/// exp(x) for x with zero constant term.
template <SeriesScalar T>
Series<T> exp_series(const Series<T>& x) {
  if (!ScalarTraits<T>::is_zero(x[0])) throw DomainError("exp needs a zero constant term");
  const int n = x.order();
  std::vector<T> e(static_cast<std::size_t>(n) + 1, scalar_from<T>(0));
  e[0] = scalar_from<T>(1);
  for (int k = 1; k <= n; ++k) {
    T acc = scalar_from<T>(0);
    for (int j = 1; j <= k; ++j) acc = acc + scalar_from<T>(j) * x[j] * e[k - j];
    e[k] = scalar_from<T>(1, k) * acc;
  }
  return Series<T>(std::move(e));
}

/// base^exponent = exp(exponent * log(base)); exact for rational series.
template <SeriesScalar T>
Series<T> pow(const Series<T>& base, const T& exponent) {
  if (!ScalarTraits<T>::is_one(base[0])) throw DomainError("power needs a constant term equal to 1");
  return exp_series(exponent * log_series(base));
}

/// Real power of a complex-float series.
inline ComplexSeries pow_real(const ComplexSeries& base, double exponent) {
  return pow(base, Complex{exponent, 0.0});
}

// ---------------------------------------------------------------------------
// Carathéodory <-> Schwarz transforms

/// (p - 1) / (p + 1) for p with constant term 1; the result vanishes at 0.
template <SeriesScalar T>
Series<T> mobius_to_disk(const Series<T>& p) {
  if (!ScalarTraits<T>::is_one(p[0])) throw DomainError("mobius_to_disk needs p(0) = 1");
  Series<T> num = p - scalar_from<T>(1);
  std::vector<T> c = num.coeffs();
  c[0] = scalar_from<T>(0);  // exact zero even for float input
  return div(Series<T>(std::move(c)), p + scalar_from<T>(1));
}

/// (1 + r) / (1 - r) for r vanishing at 0; inverse of mobius_to_disk.
template <SeriesScalar T>
Series<T> disk_to_caratheodory(const Series<T>& r) {
  if (!ScalarTraits<T>::is_zero(r[0])) throw DomainError("disk_to_caratheodory needs r(0) = 0");
  Series<T> one = Series<T>::constant(scalar_from<T>(1), r.order());
  return div(one + r, one - r);
}

// ---------------------------------------------------------------------------
// Normalized functions

/// Taylor–Maclaurin coefficients of f(z) = z + a2 z^2 + a3 z^3 + a4 z^4 [+ a5 z^5].
template <SeriesScalar T>
struct CoefficientVector {
  T a2;
  T a3;
  T a4;
  std::optional<T> a5;

  /// The coefficient a_n for n in 2..5.
  const T& at(int n) const {
    switch (n) {
      case 2: return a2;
      case 3: return a3;
      case 4: return a4;
      case 5:
        if (a5) return *a5;
        break;
      default: break;
    }
    throw DomainError("coefficient a" + std::to_string(n) + " is not available");
  }

  int top_index() const noexcept { return a5 ? 5 : 4; }

  /// f as a series; order defaults to the last known coefficient.
  Series<T> to_series(std::optional<int> order = std::nullopt) const {
    int n = order.value_or(top_index());
    if (n < top_index()) throw DomainError("order too small for the coefficient vector");
    std::vector<T> v(static_cast<std::size_t>(n) + 1, scalar_from<T>(0));
    v[1] = scalar_from<T>(1);
    v[2] = a2;
    v[3] = a3;
    v[4] = a4;
    if (a5) v[5] = *a5;
    return Series<T>(std::move(v));
  }

  static CoefficientVector from_series(const Series<T>& f) {
    if (f.order() < 4) throw DomainError("need a series of order at least 4");
    CoefficientVector a{f[2], f[3], f[4], std::nullopt};
    if (f.order() >= 5) a.a5 = f[5];
    return a;
  }
};

// ---------------------------------------------------------------------------
// Runtime-tagged series

/// A series whose scalar kind is known only at run time.
using AnySeries = std::variant<RationalSeries, ComplexSeries>;

ScalarKind kind_of(const AnySeries& s);

/// Explicit promotion of exact coefficients to complex floats.
ComplexSeries to_complex(const RationalSeries& s);
AnySeries to_complex(const AnySeries& s);

/// Kind-checked operations: mixing kinds without promotion is an error.
AnySeries mul(const AnySeries& x, const AnySeries& y);
AnySeries div(const AnySeries& x, const AnySeries& y);
AnySeries compose(const AnySeries& outer, const AnySeries& inner);
AnySeries revert(const AnySeries& f);
AnySeries mobius_to_disk(const AnySeries& p);

/// base^exponent. Exact rational series stay exact for integer exponents and
/// are promoted to complex floats otherwise.
AnySeries pow_real(const RationalSeries& base, double exponent);
AnySeries pow_real(const AnySeries& base, double exponent);

// ---------------------------------------------------------------------------
// Formatting

/// "1 + (2/3)z + (2/9)z^2"; zero coefficients are skipped.
std::string to_string(const RationalSeries& s, const std::string& var = "z");
std::string to_string(const SymbolicSeries& s, const std::string& var = "z");
std::string to_string(const ComplexSeries& s, const std::string& var = "z");

}  // namespace bikoeff
