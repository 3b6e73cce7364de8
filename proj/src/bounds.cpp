#include "bikoeff/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace bikoeff {

const BoundBreakdown& BoundSet::at(int n) const {
  switch (n) {
    case 2: return a2;
    case 3: return a3;
    case 4: return a4;
    default: throw DomainError("closed-form bounds cover a2, a3 and a4");
  }
}

namespace {

const char* const kDegenerate = "bound formula degenerate for this generator";

BoundBreakdown single(double value, Branch branch) {
  BoundBreakdown b;
  b.value = value;
  b.branch = branch;
  b.route = Route::RouteOne;
  b.route_one = value;
  return b;
}

BoundBreakdown min_of(double one, double two, Branch branch) {
  BoundBreakdown b;
  b.value = std::min(one, two);
  b.branch = branch;
  b.route = Route::Min;
  b.route_one = one;
  b.route_two = two;
  return b;
}

void attach(BoundSet& s, const std::map<std::string, double>& constants) {
  s.a2.constants = constants;
  s.a3.constants = constants;
  s.a4.constants = constants;
}

}  // namespace

BoundSet st_bounds(const ClassSpec& spec) {
  if (spec.op != OperatorKind::ST) throw DomainError("st_bounds needs an st class");
  const MindaGenerator& g = spec.generator;
  // Degeneracy is decided exactly.
  const Rational lq = spec.lambda, b1q = g.b(1), b2q = g.b(2);
  const Rational sq = 1 + 2 * lq;
  const Rational Dq = (1 + 4 * lq) * b1q * b1q + (b1q - b2q) * sq * sq;
  const Rational Eq = (9 + 44 * lq) * b1q * b1q - 8 * sq * (1 + 3 * lq) * (b2q - b1q);
  if (sgn(Dq) == 0 || sgn(Eq) == 0) throw DegenerateError(kDegenerate);

  const double l = lq.get_d(), B1 = b1q.get_d(), B2 = g.b(2).get_d(), B3 = g.b(3).get_d();
  const double s = 1 + 2 * l, t = 1 + 3 * l, u = 1 + 4 * l;
  const double D = Dq.get_d(), E = Eq.get_d(), aD = std::abs(D), aE = std::abs(E);
  const bool case_a = s * s * B1 <= aD;
  const Branch br = case_a ? Branch::CaseA : Branch::CaseB;

  BoundSet out;
  out.a2 = single(case_a ? B1 * std::sqrt(B1) / std::sqrt(aD) : B1 / s, br);

  const double p2_coeff = std::abs(s * B1 * B1 - s * s * (B1 - B2));
  const double a3_one = B1 / (4 * t * aD) * (std::abs((3 + 10 * l) * B1 * B1 + (B1 - B2) * s * s) + p2_coeff);
  const double a3_two = case_a ? B1 * (p2_coeff + aD) / (2 * t * aD)
                               : (std::abs(B1 * B1 - s * (B1 - B2)) + s * B1) / (2 * t * s);
  out.a3 = min_of(a3_one, a3_two, br);

  const double K = B1 * s * s / (4 * D) * (2 * t * B1 * B1 * B1 / (s * s * s) + (B1 + B3 - 2 * B2));
  const double H = (3 + 8 * l) * B1 * B1 / (8 * s * t);
  const double A = (B2 - B1) + H + K;
  const double C = -H + K;
  const double factor = case_a ? 2 * s * std::sqrt(B1) / std::sqrt(aD) : 2.0;
  const double a4_one = (B1 + factor * (std::abs(A) + std::abs(C))) / (3 * u);
  const double X = (12 + 52 * l) * B1 * B1 - 4 * s * t * (B2 - B1);
  const double Y = (3 + 8 * l) * B1 * B1 + 4 * s * t * (B2 - B1);
  const double V = (B2 - B1) + B1 * (2 * t * B1 * B1 * B1 + s * s * s * (B1 + B3 - 2 * B2)) / (2 * s * D);
  const double a4_two = 2 * B1 * (std::abs(X) + std::abs(Y)) / (6 * u * aE) + factor / (3 * u) * std::abs(V);
  out.a4 = min_of(a4_one, a4_two, br);

  attach(out, {{"A", A}, {"C", C}, {"D", D}, {"E", E}});
  return out;
}

BoundSet m_bounds(const ClassSpec& spec) {
  if (spec.op != OperatorKind::M) throw DomainError("m_bounds needs an m class");
  const MindaGenerator& g = spec.generator;
  const Rational lq = spec.lambda, b1q = g.b(1), b2q = g.b(2);
  const Rational sq = 1 + lq;
  const Rational Dq = b1q * b1q + sq * (b1q - b2q);
  const Rational Eq = (9 + 15 * lq) * b1q * b1q - 8 * (1 + 2 * lq) * sq * (b2q - b1q);
  if (sgn(Dq) == 0 || sgn(Eq) == 0) throw DegenerateError(kDegenerate);

  const double l = lq.get_d(), B1 = b1q.get_d(), B2 = g.b(2).get_d(), B3 = g.b(3).get_d();
  const double s = 1 + l, t = 1 + 2 * l, u = 1 + 3 * l;
  const double D = Dq.get_d(), E = Eq.get_d(), aD = std::abs(D), aE = std::abs(E);
  // Part (b) is read with ">=" (the theorem prints "<=" for both parts).
  const bool case_a = s * B1 <= aD;
  const Branch br = case_a ? Branch::CaseA : Branch::CaseB;

  BoundSet out;
  out.a2 = single(case_a ? B1 * std::sqrt(B1) / std::sqrt(s * aD) : B1 / s, br);

  const double q2_coeff = std::abs((1 + 3 * l) * B1 * B1 - s * s * (B1 - B2));
  const double a3_one =
      B1 / (4 * t * s * aD) * (std::abs((3 + 5 * l) * B1 * B1 + s * s * (B1 - B2)) + q2_coeff);
  const double a3_two = case_a ? B1 * (q2_coeff + std::abs(s * B1 * B1 + s * s * (B1 - B2))) / (2 * t * s * aD)
                               : (q2_coeff + B1 * s * s) / (2 * t * s * s);
  out.a3 = min_of(a3_one, a3_two, br);

  const double K1 = B1 * s / (4 * D) * ((B1 + B3 - 2 * B2) + 2 * (1 + 4 * l) * B1 * B1 * B1 / (s * s * s));
  const double H = 3 * (1 + 5 * l) * B1 * B1 / (8 * s * t);
  const double A1 = (B2 - B1) + H + K1;
  const double C1 = K1 - H;
  const double factor = case_a ? 2 * std::sqrt(s * B1) / std::sqrt(aD) : 2.0;
  const double a4_one = (B1 + factor * (std::abs(A1) + std::abs(C1))) / (3 * u);
  const double X1 = (12 + 30 * l) * B1 * B1 - 4 * s * t * (B2 - B1);
  const double Y1 = 4 * s * t * (B2 - B1) + 3 * B1 * B1 * (1 + 5 * l);
  const double V1 =
      (B2 - B1) + B1 * ((B1 + B3 - 2 * B2) * s * s * s + 2 * (1 + 4 * l) * B1 * B1 * B1) / (2 * s * s * D);
  const double a4_two = (B1 * (std::abs(X1) + std::abs(Y1)) / aE + factor * std::abs(V1)) / (3 * u);
  out.a4 = min_of(a4_one, a4_two, br);

  attach(out, {{"A1", A1}, {"C1", C1}, {"D1", D}, {"E1", E}});
  return out;
}

BoundSet class_bounds(const ClassSpec& spec) {
  return spec.op == OperatorKind::ST ? st_bounds(spec) : m_bounds(spec);
}

double st_rho_a5(double rho, A5Variant variant) {
  if (!(rho >= 0.0 && rho <= 0.5)) throw DomainError("the a5 bound for order rho needs 0 <= rho <= 1/2");
  const double r = 1.0 - rho;
  const double tail = 2.0 * std::sqrt(2.0) / 3.0 * std::pow(r, 1.5);
  switch (variant) {
    case A5Variant::Stated: return 2.0 / 3.0 * r + 1.5 * r * r + tail;
    case A5Variant::Proof: return 0.5 * r + 5.0 / 3.0 * r * r + tail;
    default: throw DomainError("order-rho a5 variants are stated and proof");
  }
}

double ss_beta_a5(double beta, A5Variant variant) {
  if (!(beta >= 0.5 && beta <= 1.0)) throw DomainError("the a5 bound for strong order beta needs 1/2 <= beta <= 1");
  const double b = beta;
  double denom;
  switch (variant) {
    case A5Variant::Stated: denom = std::pow(b + 1.0, 4); break;
    case A5Variant::Rederived: denom = std::pow(b + 1.0, 2); break;
    default: throw DomainError("strong-beta a5 variants are stated and rederived");
  }
  return b / 9.0 *
         (30 * b * b - 21 * b + 9 + (38 * b * b - 30 * b + 7) * b / denom + 3 * (7 * b - 3) / std::sqrt(b + 1.0));
}

double baseline_starlike_an(double rho, int n) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("starlike order needs 0 <= rho < 1");
  double prod = 1.0;
  for (int k = 2; k <= n; ++k) prod *= (k - 2 * rho) / (k - 1);
  return prod;
}

std::optional<double> ali_singh_a5(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("strong order needs 0 < beta <= 1");
  const double b = beta;
  if (38 * b * b * b - 30 * b * b + 16 * b >= 4.5) return b * b / 9.0 * (38 * b * b + 7);
  if (228 * b * b * b * b - 194 * b * b * b + 2 * b * b + 39 * b - 9 <= 0) return b / 2.0;
  return std::nullopt;
}

std::string to_string(Branch b) { return b == Branch::CaseA ? "case_a" : "case_b"; }

std::string to_string(Route r) {
  switch (r) {
    case Route::RouteOne: return "route_one";
    case Route::RouteTwo: return "route_two";
    case Route::Min: return "min";
  }
  return "min";
}

std::string to_string(A5Variant v) {
  switch (v) {
    case A5Variant::Stated: return "stated";
    case A5Variant::Proof: return "proof";
    case A5Variant::Rederived: return "rederived";
  }
  return "stated";
}

}  // namespace bikoeff
