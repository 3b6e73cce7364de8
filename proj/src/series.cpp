#include "bikoeff/series.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace bikoeff {

// ---------------------------------------------------------------------------
// Rational literals

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("malformed number '" + std::string(whole) + "'");
  }
  return mpz_class(std::string(digits));
}

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (sgn(den) == 0) throw ParseError("zero denominator in '" + std::string(whole) + "'");
    return num / den;
  }

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    mpz_class ez = parse_integer(exp_text, whole);
    if (ez > 4096) throw ParseError("exponent too large in '" + std::string(whole) + "'");
    exponent = ez.get_si() * (exp_negative ? -1 : 1);
    text = text.substr(0, e);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + std::string(whole) + "'");
  mpz_class mantissa = int_part.empty() ? mpz_class(0) : parse_integer(int_part, whole);
  if (!frac_part.empty()) {
    mantissa = mantissa * pow10(frac_part.size()) + parse_integer(frac_part, whole);
  }
  exponent -= static_cast<long>(frac_part.size());
  Rational q(mantissa);
  if (exponent > 0) q *= Rational(pow10(static_cast<unsigned long>(exponent)));
  if (exponent < 0) q /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// AnySeries

ScalarKind kind_of(const AnySeries& s) {
  return std::holds_alternative<RationalSeries>(s) ? ScalarKind::ExactRational : ScalarKind::ComplexFloat;
}

ComplexSeries to_complex(const RationalSeries& s) {
  std::vector<Complex> v;
  v.reserve(s.coeffs().size());
  for (const Rational& c : s.coeffs()) v.emplace_back(c.get_d(), 0.0);
  return ComplexSeries(std::move(v));
}

AnySeries to_complex(const AnySeries& s) {
  if (const auto* r = std::get_if<RationalSeries>(&s)) return to_complex(*r);
  return s;
}

namespace {

template <class Op>
AnySeries binary_same_kind(const AnySeries& x, const AnySeries& y, const char* what, Op op) {
  if (x.index() != y.index()) {
    throw DomainError(std::string(what) + ": mixed scalar kinds; promote explicitly with to_complex");
  }
  return std::visit(
      [&](const auto& xs) -> AnySeries {
        using S = std::decay_t<decltype(xs)>;
        return op(xs, std::get<S>(y));
      },
      x);
}

}  // namespace

AnySeries mul(const AnySeries& x, const AnySeries& y) {
  return binary_same_kind(x, y, "mul", [](const auto& a, const auto& b) { return mul(a, b); });
}

AnySeries div(const AnySeries& x, const AnySeries& y) {
  return binary_same_kind(x, y, "div", [](const auto& a, const auto& b) { return div(a, b); });
}

AnySeries compose(const AnySeries& outer, const AnySeries& inner) {
  return binary_same_kind(outer, inner, "compose", [](const auto& a, const auto& b) { return compose(a, b); });
}

AnySeries revert(const AnySeries& f) {
  return std::visit([](const auto& s) -> AnySeries { return revert(s); }, f);
}

AnySeries mobius_to_disk(const AnySeries& p) {
  return std::visit([](const auto& s) -> AnySeries { return mobius_to_disk(s); }, p);
}

AnySeries pow_real(const RationalSeries& base, double exponent) {
  if (std::isfinite(exponent) && std::trunc(exponent) == exponent && std::abs(exponent) < 1e9) {
    return pow(base, Rational(exponent));
  }
  return pow_real(to_complex(base), exponent);
}

AnySeries pow_real(const AnySeries& base, double exponent) {
  if (const auto* r = std::get_if<RationalSeries>(&base)) return pow_real(*r, exponent);
  return pow_real(std::get<ComplexSeries>(base), exponent);
}

// ---------------------------------------------------------------------------
// Formatting

namespace {

std::string power_suffix(const std::string& var, int n) {
  if (n == 0) return "";
  if (n == 1) return var;
  return var + "^" + std::to_string(n);
}

}  // namespace

std::string to_string(const RationalSeries& s, const std::string& var) {
  std::ostringstream out;
  bool first = true;
  for (int n = 0; n <= s.order(); ++n) {
    const Rational& c = s[n];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (n == 0) {
      out << format_rational(mag);
    } else if (mag == 1) {
      out << power_suffix(var, n);
    } else if (mag.get_den() == 1) {
      out << format_rational(mag) << power_suffix(var, n);
    } else {
      out << "(" << format_rational(mag) << ")" << power_suffix(var, n);
    }
  }
  if (first) out << "0";
  return out.str();
}

std::string to_string(const SymbolicSeries& s, const std::string& var) {
  std::ostringstream out;
  bool first = true;
  for (int n = 0; n <= s.order(); ++n) {
    const Polynomial& c = s[n];
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    if (n == 0) {
      out << c.to_string();
    } else if (c.is_constant() && c.constant_term() == 1) {
      out << power_suffix(var, n);
    } else {
      out << "(" << c.to_string() << ")" << power_suffix(var, n);
    }
  }
  if (first) out << "0";
  return out.str();
}

std::string to_string(const ComplexSeries& s, const std::string& var) {
  std::ostringstream out;
  for (int n = 0; n <= s.order(); ++n) {
    if (n > 0) out << " + ";
    const Complex& c = s[n];
    out << fmt::format("({:.15g}{:+.15g}i)", c.real(), c.imag()) << power_suffix(var, n);
  }
  return out.str();
}

}  // namespace bikoeff
