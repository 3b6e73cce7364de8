#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bikoeff/scalar.hpp"

namespace bikoeff {

/// (p_1, ..., p_m): initial coefficients of p(z) = 1 + p_1 z + ... with Re p > 0.
using CaratheodoryTuple = std::vector<Complex>;

struct Atom {
  double angle = 0.0;   ///< in [0, 2 pi)
  double weight = 0.0;  ///< nonnegative
};

/// Probability measure with finitely many atoms on the circle.
struct AtomicMeasure {
  std::vector<Atom> atoms;

  /// Throws DomainError unless weights are nonnegative and sum to 1 (within 1e-12).
  void validate() const;
};

/// Herglotz moments p_n = 2 sum_k w_k e^{-i n theta_k}, n = 1..m.
CaratheodoryTuple from_atoms(const AtomicMeasure& mu, int m);

/// Hermitian Toeplitz matrix T_{jk} = c_{j-k} with c_0 = 2, c_n = p_n, c_{-n} = conj(p_n); size m+1.
Eigen::MatrixXcd toeplitz(std::span<const Complex> p);

/// Smallest eigenvalue of toeplitz(p).
double min_eigenvalue(std::span<const Complex> p);

/// Carathéodory-Toeplitz criterion: min eigenvalue >= -tol.
bool is_admissible(std::span<const Complex> p, double tol = 1e-9);

/// Largest t with t * p admissible (exactly on the boundary); +inf for p = 0.
double boundary_scale(std::span<const Complex> p);

/// Draws a random atomic measure: atom count uniform in 1..max_atoms, uniform
/// angles, Dirichlet(1) weights. With restrict_real the atoms come in
/// conjugate pairs (theta, -theta) of equal weight, so the moments are real.
AtomicMeasure sample_measure(std::mt19937_64& rng, int max_atoms, bool restrict_real = false);

/// An admissible tuple drawn from sample_measure; deterministic in the seed.
CaratheodoryTuple sample(std::uint64_t seed, int m, int max_atoms = 5, bool restrict_real = false);

/// splitmix64 mixing step, used to derive independent per-sample seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace bikoeff
