#include "bikoeff/polynomial.hpp"

#include <sstream>

namespace bikoeff {

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, c);
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.terms_.emplace(Monomial{{name, 1U}}, Rational(1));
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& values) const {
  Rational total = 0;
  for (const auto& [mono, coeff] : terms_) {
    Rational term = coeff;
    for (const auto& [name, exp] : mono) {
      auto it = values.find(name);
      if (it == values.end()) throw DomainError("no value for variable '" + name + "'");
      for (unsigned k = 0; k < exp; ++k) term *= it->second;
    }
    total += term;
  }
  return total;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial operator+(const Polynomial& x, const Polynomial& y) {
  Polynomial r = x;
  for (const auto& [m, c] : y.terms_) r.add_term(m, c);
  return r;
}

Polynomial operator-(const Polynomial& x) {
  Polynomial r;
  for (const auto& [m, c] : x.terms_) r.terms_.emplace(m, -c);
  return r;
}

Polynomial operator-(const Polynomial& x, const Polynomial& y) { return x + (-y); }

Polynomial operator*(const Polynomial& x, const Polynomial& y) {
  Polynomial r;
  for (const auto& [mx, cx] : x.terms_) {
    for (const auto& [my, cy] : y.terms_) {
      Polynomial::Monomial m = mx;
      for (const auto& [name, exp] : my) m[name] += exp;
      r.add_term(m, cx * cy);
    }
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  // Higher total degree first, then lexicographic on variables.
  std::multimap<unsigned, std::pair<Monomial, Rational>, std::greater<>> ordered;
  for (const auto& [m, c] : terms_) {
    unsigned degree = 0;
    for (const auto& [name, exp] : m) degree += exp;
    ordered.emplace(degree, std::make_pair(m, c));
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& [degree, term] : ordered) {
    const auto& [mono, coeff] = term;
    Rational mag = abs(coeff);
    if (first) {
      if (sgn(coeff) < 0) out << "-";
    } else {
      out << (sgn(coeff) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = (mag == 1) && !mono.empty();
    if (!unit) {
      out << format_rational(mag);
      if (!mono.empty()) out << "*";
    }
    bool first_var = true;
    for (const auto& [name, exp] : mono) {
      if (!first_var) out << "*";
      first_var = false;
      out << name;
      if (exp > 1) out << "^" << exp;
    }
  }
  return out.str();
}

}  // namespace bikoeff
