#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bikoeff/series.hpp"

namespace bikoeff {

enum class GeneratorFamily { Janowski, Order, Strong, Custom };

/// phi(z) = 1 + B1 z + B2 z^2 + ... with B1 > 0, kept exactly.
struct MindaGenerator {
  GeneratorFamily family = GeneratorFamily::Custom;
  /// Family parameters by canonical key: A, B (janowski), rho, beta, b1..b3 (custom).
  std::map<std::string, Rational> params;
  /// B1..BK; B[0] is B1.
  std::vector<Rational> B;

  int size() const noexcept { return static_cast<int>(B.size()); }
  /// B_n for n >= 1; zero beyond the stored length.
  Rational b(int n) const;
  const Rational& param(const std::string& key) const;
  /// 1 + B1 z + ... + BK z^K.
  RationalSeries series() const;
};

/// (1 + A z)/(1 + B z); requires -1 <= B < A <= 1.
MindaGenerator janowski_coeffs(const Rational& A, const Rational& B, int K = kDefaultOrder);
/// (1 + (1 - 2 rho) z)/(1 - z); requires 0 <= rho < 1.
MindaGenerator order_coeffs(const Rational& rho, int K = kDefaultOrder);
/// ((1 + z)/(1 - z))^beta, expanded exactly; requires 0 < beta <= 1.
MindaGenerator strong_coeffs(const Rational& beta, int K = kDefaultOrder);
/// Explicit B1, B2, B3 (B1 > 0); higher coefficients are zero.
MindaGenerator custom_coeffs(const Rational& b1, const Rational& b2, const Rational& b3, int K = kDefaultOrder);

enum class OperatorKind { ST, M };

struct ClassSpec {
  OperatorKind op = OperatorKind::ST;
  Rational lambda = 0;
  MindaGenerator generator;
};

ClassSpec make_spec(OperatorKind op, const Rational& lambda, MindaGenerator generator);

/// Parses `op:lambda=X:family:key=value,...` or the shorthand `ss:beta=X`.
ClassSpec parse_class_spec(std::string_view text);
/// Canonical text form with exact fractions, e.g. "st:lambda=1/2:order:rho=1/4".
std::string to_text(const ClassSpec& spec);
std::string to_string(OperatorKind op);
std::string to_string(GeneratorFamily family);

/// ST: z f'/f + lambda z^2 f''/f.  M: lambda (1 + z f''/f') + (1 - lambda) z f'/f.
/// f must be normalized; the result has order f.order() - 1.
template <SeriesScalar T>
Series<T> apply_operator(OperatorKind op, const T& lambda, const Series<T>& f) {
  if (f.order() < 2) throw DomainError("operator needs a series of order at least 2");
  if (!ScalarTraits<T>::is_zero(f[0]) || !ScalarTraits<T>::is_one(f[1])) {
    throw DomainError("operator needs a normalized series (f(0) = 0, f'(0) = 1)");
  }
  const T one = scalar_from<T>(1);
  const Series<T> d1 = derivative(f);             // order n-1
  const Series<T> zd2 = shift_up(derivative(d1)); // order n-1
  const Series<T> h = shift_down(f);              // f/z, order n-1
  if (op == OperatorKind::ST) {
    return div(d1 + lambda * zd2, h);
  }
  Series<T> convex = div(zd2, d1) + one;
  Series<T> starlike = div(d1, h);
  return lambda * convex + T(one - lambda) * starlike;
}

/// The triangular coefficient system of a class: the operator applied to f
/// (resp. its inverse g) equals phi((p-1)/(p+1)) (resp. phi((q-1)/(q+1))) to
/// order m. All equations come from generic series expansion.
template <FieldScalar T>
class CoefficientSystem {
 public:
  CoefficientSystem(const ClassSpec& spec, int m)
      : op_(spec.op), lambda_(scalar_from<T>(spec.lambda)), m_(m) {
    if (m < 1) throw DomainError("coefficient system needs m >= 1");
    std::vector<T> phi{scalar_from<T>(1)};
    for (int n = 1; n <= m; ++n) phi.push_back(scalar_from<T>(spec.generator.b(n)));
    phi_ = Series<T>(std::move(phi));
    // a_{n+1} enters coefficient n of the operator linearly with a fixed slope.
    const std::vector<T> zeros(static_cast<std::size_t>(m), scalar_from<T>(0));
    const Series<T> lhs0 = lhs_f(zeros);
    for (int n = 1; n <= m; ++n) {
      std::vector<T> a = zeros;
      a[n - 1] = scalar_from<T>(1);
      slopes_.push_back(lhs_f(a)[n] - lhs0[n]);
    }
    // q_n enters coefficient n of phi((q-1)/(q+1)) with slope B1/2, found the same way.
    const Series<T> rhs0 = rhs(zeros);
    for (int n = 1; n <= m; ++n) {
      std::vector<T> q = zeros;
      q[n - 1] = scalar_from<T>(1);
      q_slopes_.push_back(rhs(q)[n] - rhs0[n]);
    }
  }

  int size() const noexcept { return m_; }
  const std::vector<T>& slopes() const noexcept { return slopes_; }

  /// f = z + a_2 z^2 + ... + a_{m+1} z^{m+1} from a = (a_2, ..., a_{m+1}).
  Series<T> function_series(std::span<const T> a) const {
    check_len(a, "a");
    std::vector<T> v(static_cast<std::size_t>(m_) + 2, scalar_from<T>(0));
    v[1] = scalar_from<T>(1);
    for (int k = 0; k < m_; ++k) v[k + 2] = a[k];
    return Series<T>(std::move(v));
  }

  /// Operator applied to f, order m.
  Series<T> lhs_f(std::span<const T> a) const { return apply_operator(op_, lambda_, function_series(a)); }

  /// Operator applied to the inverse g of f, order m.
  Series<T> lhs_g(std::span<const T> a) const { return apply_operator(op_, lambda_, revert(function_series(a))); }

  /// phi((p-1)/(p+1)) to order m for p = (p_1, ..., p_m).
  Series<T> rhs(std::span<const T> p) const {
    check_len(p, "p");
    std::vector<T> v{scalar_from<T>(1)};
    v.insert(v.end(), p.begin(), p.end());
    return compose(phi_, mobius_to_disk(Series<T>(std::move(v))));
  }

  /// Solves coefficients 1..m of lhs_f(a) = rhs(p) for a_2..a_{m+1}.
  std::vector<T> solve(std::span<const T> p) const {
    const Series<T> r = rhs(p);
    std::vector<T> a(static_cast<std::size_t>(m_), scalar_from<T>(0));
    for (int n = 1; n <= m_; ++n) {
      a[n - 1] = scalar_from<T>(0);
      const T partial = lhs_f(a)[n];
      a[n - 1] = (r[n] - partial) * ScalarTraits<T>::inverse(slopes_[n - 1]);
    }
    return a;
  }

  /// The unique q with lhs_g(a) = rhs(q) through order m.
  std::vector<T> implied_q(std::span<const T> a) const {
    const Series<T> target = lhs_g(a);
    std::vector<T> q(static_cast<std::size_t>(m_), scalar_from<T>(0));
    for (int n = 1; n <= m_; ++n) {
      q[n - 1] = scalar_from<T>(0);
      const T partial = rhs(q)[n];
      q[n - 1] = (target[n] - partial) * ScalarTraits<T>::inverse(q_slopes_[n - 1]);
    }
    return q;
  }

 private:
  void check_len(std::span<const T> v, const char* what) const {
    if (static_cast<int>(v.size()) != m_) {
      throw DomainError(std::string(what) + " must have " + std::to_string(m_) + " entries");
    }
  }

  OperatorKind op_;
  T lambda_;
  int m_;
  Series<T> phi_{std::vector<T>{scalar_from<T>(1)}};
  std::vector<T> slopes_;
  std::vector<T> q_slopes_;
};

/// a_2..a_4 (m = 3) or a_2..a_5 (m = 4) from a Carathéodory tuple p_1..p_m.
template <FieldScalar T>
CoefficientVector<T> solve_coefficients(const ClassSpec& spec, std::span<const T> p) {
  if (p.size() != 3 && p.size() != 4) throw DomainError("solve_coefficients needs 3 or 4 entries of p");
  CoefficientSystem<T> sys(spec, static_cast<int>(p.size()));
  auto a = sys.solve(p);
  CoefficientVector<T> out{a[0], a[1], a[2], std::nullopt};
  if (a.size() == 4) out.a5 = a[3];
  return out;
}

template <FieldScalar T>
CoefficientVector<T> solve_coefficients(const ClassSpec& spec, const std::vector<T>& p) {
  return solve_coefficients(spec, std::span<const T>(p));
}

/// q_1..q_3 (or q_1..q_4 when a5 is present) making the inverse-side equations hold.
template <FieldScalar T>
std::vector<T> implied_q(const ClassSpec& spec, const CoefficientVector<T>& a) {
  const int m = a.a5 ? 4 : 3;
  CoefficientSystem<T> sys(spec, m);
  std::vector<T> v{a.a2, a.a3, a.a4};
  if (a.a5) v.push_back(*a.a5);
  return sys.implied_q(v);
}

}  // namespace bikoeff
