#pragma once

#include <map>
#include <optional>
#include <string>

#include "bikoeff/classes.hpp"

namespace bikoeff {

/// CaseA: (1+2l)^2 B1 <= |D| (ST) or (1+l) B1 <= |D1| (M); CaseB otherwise.
enum class Branch { CaseA, CaseB };
enum class Route { RouteOne, RouteTwo, Min };

struct BoundBreakdown {
  double value = 0.0;
  Branch branch = Branch::CaseA;
  Route route = Route::RouteOne;
  /// Both alternatives when route == Min.
  std::optional<double> route_one;
  std::optional<double> route_two;
  /// A, C (ST) or A1, C1 (M), plus the case discriminants.
  std::map<std::string, double> constants;
};

struct BoundSet {
  BoundBreakdown a2;
  BoundBreakdown a3;
  BoundBreakdown a4;

  /// n in 2..4.
  const BoundBreakdown& at(int n) const;
};

/// Bounds of the ST^lambda theorem; throws DegenerateError on a zero denominator.
BoundSet st_bounds(const ClassSpec& spec);
/// Bounds of the M^lambda theorem; throws DegenerateError on a zero denominator.
BoundSet m_bounds(const ClassSpec& spec);
/// Dispatches on spec.op.
BoundSet class_bounds(const ClassSpec& spec);

enum class A5Variant { Stated, Proof, Rederived };

/// |a5| for bi-starlike of order rho, 0 <= rho <= 1/2. Variant Stated or Proof.
double st_rho_a5(double rho, A5Variant variant);
/// |a5| for strongly bi-starlike of order beta, 1/2 <= beta <= 1. Variant Stated or Rederived.
double ss_beta_a5(double beta, A5Variant variant);
/// Classical |a_n| bound for starlike of order rho: prod_{k=2}^n (k - 2 rho) / (n-1)!.
double baseline_starlike_an(double rho, int n);
/// Ali-Singh |a5| bound for strongly starlike of order beta, when one of its conditions holds.
std::optional<double> ali_singh_a5(double beta);

std::string to_string(Branch b);
std::string to_string(Route r);
std::string to_string(A5Variant v);

}  // namespace bikoeff
