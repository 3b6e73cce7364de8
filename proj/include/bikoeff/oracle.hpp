#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bikoeff/bounds.hpp"
#include "bikoeff/caratheodory.hpp"
#include "bikoeff/classes.hpp"

namespace bikoeff {

enum class Target { a2, a3, a4, a5 };

std::string to_string(Target t);
Target parse_target(std::string_view text);
inline int coefficient_index(Target t) { return static_cast<int>(t) + 2; }

struct SearchConfig {
  std::uint64_t seed = 0;
  /// Number of sample indices, including explicit starts.
  int samples = 10000;
  /// Coordinate sweeps per local refinement.
  int local_refine_steps = 12;
  double tol_feasible = 1e-7;
  double tol_violation = 1e-8;
  /// Restrict every sample to real tuples.
  bool restrict_real = false;
  /// Sample indices below this are real-restricted; the rest are complex.
  int real_first = 2000;
  int max_atoms = 5;
  /// A sample is refined when its merit reaches the k-th best merit seen so far.
  int refine_top = 8;
  /// Explicit p tuples evaluated at the first indices (no refinement).
  std::vector<CaratheodoryTuple> starts;
};

/// One bound variant compared against the search result.
struct VariantCheck {
  A5Variant variant;
  double bound = 0.0;
  /// True when the variant is the one carried by a complete proof.
  bool proven = false;
  bool violated = false;
};

struct OracleReport {
  Target target = Target::a2;
  ClassSpec spec;
  double best_value = 0.0;
  double bound_value = 0.0;
  double slack = 0.0;
  /// The proven bound is exceeded by more than tol_violation.
  bool violated = false;
  CaratheodoryTuple witness_p;
  CaratheodoryTuple witness_q;
  std::vector<Complex> witness_a;  ///< a_2..a_{m+1}
  std::int64_t witness_index = -1;
  std::int64_t feasible_count = 0;
  std::int64_t evaluations = 0;
  /// a5 only: every variant with its own verdict.
  std::vector<VariantCheck> variants;
};

/// Maximizes |a_target| over p admissible whose implied q is admissible.
/// a5 is supported for st, lambda = 0 with the order (rho <= 1/2) or strong (beta >= 1/2) generators.
OracleReport max_coeff(const ClassSpec& spec, Target target, const SearchConfig& cfg = {});

enum class A5Family { STrho, SSbeta };

/// The fourth-order systems for order-rho and strong-beta classes; compares against both bound variants.
OracleReport check_a5_system(A5Family family, const Rational& param, const SearchConfig& cfg = {});

/// Atomic measure reproducing p (within 1e-8) with at most p.size() + 1 atoms.
AtomicMeasure fit_atoms(const CaratheodoryTuple& p, int max_atoms);

/// max_n |p_n(mu) - p_n|.
double moment_residual(const AtomicMeasure& mu, const CaratheodoryTuple& p);

}  // namespace bikoeff
