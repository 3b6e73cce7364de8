#include "bikoeff/classes.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace bikoeff {

Rational MindaGenerator::b(int n) const {
  if (n < 1) throw DomainError("generator coefficients start at B1");
  return n <= size() ? B[static_cast<std::size_t>(n - 1)] : Rational(0);
}

const Rational& MindaGenerator::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw DomainError("generator has no parameter '" + key + "'");
  return it->second;
}

RationalSeries MindaGenerator::series() const {
  std::vector<Rational> v{Rational(1)};
  v.insert(v.end(), B.begin(), B.end());
  return RationalSeries(std::move(v));
}

namespace {

void check_k(int K) {
  if (K < 3) throw DomainError("a generator needs at least B1, B2, B3");
}

}  // namespace

MindaGenerator janowski_coeffs(const Rational& A, const Rational& B, int K) {
  check_k(K);
  if (!(B >= -1 && B < A && A <= 1)) throw DomainError("janowski parameters need -1 <= B < A <= 1");
  MindaGenerator g;
  g.family = GeneratorFamily::Janowski;
  g.params = {{"A", A}, {"B", B}};
  Rational term = A - B;
  for (int n = 1; n <= K; ++n) {
    g.B.push_back(term);
    term *= -B;
  }
  return g;
}

MindaGenerator order_coeffs(const Rational& rho, int K) {
  if (!(rho >= 0 && rho < 1)) throw DomainError("order family needs 0 <= rho < 1");
  MindaGenerator g = janowski_coeffs(1 - 2 * rho, Rational(-1), K);
  g.family = GeneratorFamily::Order;
  g.params = {{"rho", rho}};
  return g;
}

MindaGenerator strong_coeffs(const Rational& beta, int K) {
  check_k(K);
  if (!(beta > 0 && beta <= 1)) throw DomainError("strong family needs 0 < beta <= 1");
  std::vector<Rational> num(static_cast<std::size_t>(K) + 1, Rational(0));
  std::vector<Rational> den(static_cast<std::size_t>(K) + 1, Rational(0));
  num[0] = num[1] = den[0] = 1;
  den[1] = -1;
  RationalSeries s = pow(div(RationalSeries(num), RationalSeries(den)), beta);
  MindaGenerator g;
  g.family = GeneratorFamily::Strong;
  g.params = {{"beta", beta}};
  for (int n = 1; n <= K; ++n) g.B.push_back(s[n]);
  return g;
}

MindaGenerator custom_coeffs(const Rational& b1, const Rational& b2, const Rational& b3, int K) {
  check_k(K);
  if (!(b1 > 0)) throw DomainError("generator needs B1 > 0");
  MindaGenerator g;
  g.family = GeneratorFamily::Custom;
  g.params = {{"b1", b1}, {"b2", b2}, {"b3", b3}};
  g.B.assign(static_cast<std::size_t>(K), Rational(0));
  g.B[0] = b1;
  g.B[1] = b2;
  g.B[2] = b3;
  return g;
}

ClassSpec make_spec(OperatorKind op, const Rational& lambda, MindaGenerator generator) {
  if (lambda < 0) throw DomainError("lambda must be nonnegative");
  if (generator.size() < 3 || !(generator.b(1) > 0)) throw DomainError("generator needs B1 > 0 and K >= 3");
  return ClassSpec{op, lambda, std::move(generator)};
}

std::string to_string(OperatorKind op) { return op == OperatorKind::ST ? "st" : "m"; }

std::string to_string(GeneratorFamily family) {
  switch (family) {
    case GeneratorFamily::Janowski: return "janowski";
    case GeneratorFamily::Order: return "order";
    case GeneratorFamily::Strong: return "strong";
    case GeneratorFamily::Custom: return "custom";
  }
  return "custom";
}

// ---------------------------------------------------------------------------
// Text form

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::pair<std::string, Rational> parse_pair(std::string_view item) {
  auto eq = item.find('=');
  if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(item) + "'");
  std::string key(trim(item.substr(0, eq)));
  if (key.empty()) throw ParseError("empty key in '" + std::string(item) + "'");
  std::string_view value = trim(item.substr(eq + 1));
  try {
    return {key, parse_rational(value)};
  } catch (const ParseError& e) {
    throw ParseError("bad value for key '" + key + "': " + e.what());
  }
}

std::map<std::string, Rational> parse_params(std::string_view segment, const std::string& family,
                                             const std::map<std::string, std::string>& aliases) {
  std::map<std::string, Rational> out;
  if (segment.empty()) return out;
  for (std::string_view item : split(segment, ',')) {
    auto [key, value] = parse_pair(item);
    auto alias = aliases.find(key);
    if (alias == aliases.end()) throw ParseError("unknown key '" + key + "' for family " + family);
    if (!out.emplace(alias->second, value).second) throw ParseError("duplicate key '" + key + "'");
  }
  for (const auto& [given, canonical] : aliases) {
    if (!out.contains(canonical)) throw ParseError("missing key '" + canonical + "' for family " + family);
  }
  return out;
}

MindaGenerator parse_generator(std::string_view family, std::string_view segment) {
  const std::string fam(family);
  if (fam == "janowski") {
    auto p = parse_params(segment, fam, {{"A", "A"}, {"a", "A"}, {"B", "B"}, {"b", "B"}});
    return janowski_coeffs(p.at("A"), p.at("B"));
  }
  if (fam == "order") {
    auto p = parse_params(segment, fam, {{"rho", "rho"}});
    return order_coeffs(p.at("rho"));
  }
  if (fam == "strong") {
    auto p = parse_params(segment, fam, {{"beta", "beta"}});
    return strong_coeffs(p.at("beta"));
  }
  if (fam == "custom") {
    auto p = parse_params(segment, fam, {{"b1", "b1"}, {"b2", "b2"}, {"b3", "b3"}});
    return custom_coeffs(p.at("b1"), p.at("b2"), p.at("b3"));
  }
  throw ParseError("unknown family '" + fam + "' (expected janowski, order, strong or custom)");
}

}  // namespace

ClassSpec parse_class_spec(std::string_view text) {
  auto parts = split(trim(text), ':');
  const std::string op(parts[0]);
  if (op == "ss") {
    if (parts.size() != 2) throw ParseError("shorthand form is ss:beta=X");
    auto [key, beta] = parse_pair(parts[1]);
    if (key != "beta") throw ParseError("unknown key '" + key + "' for ss (expected beta)");
    return make_spec(OperatorKind::ST, 0, strong_coeffs(beta));
  }
  OperatorKind kind;
  if (op == "st") {
    kind = OperatorKind::ST;
  } else if (op == "m") {
    kind = OperatorKind::M;
  } else {
    throw ParseError("unknown operator '" + op + "' (expected st, m or ss)");
  }
  if (parts.size() != 4) throw ParseError("expected op:lambda=X:family:key=value,...");
  auto [key, lambda] = parse_pair(parts[1]);
  if (key != "lambda") throw ParseError("unknown key '" + key + "' (expected lambda)");
  return make_spec(kind, lambda, parse_generator(parts[2], parts[3]));
}

std::string to_text(const ClassSpec& spec) {
  std::string out = to_string(spec.op) + ":lambda=" + format_rational(spec.lambda) + ":" +
                    to_string(spec.generator.family) + ":";
  auto field = [&](const char* key) { return std::string(key) + "=" + format_rational(spec.generator.param(key)); };
  switch (spec.generator.family) {
    case GeneratorFamily::Janowski: out += field("A") + "," + field("B"); break;
    case GeneratorFamily::Order: out += field("rho"); break;
    case GeneratorFamily::Strong: out += field("beta"); break;
    case GeneratorFamily::Custom: out += field("b1") + "," + field("b2") + "," + field("b3"); break;
  }
  return out;
}

}  // namespace bikoeff
