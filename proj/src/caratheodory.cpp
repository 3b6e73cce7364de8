#include "bikoeff/caratheodory.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bikoeff/error.hpp"

namespace bikoeff {

void AtomicMeasure::validate() const {
  if (atoms.empty()) throw DomainError("a measure needs at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms) {
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) throw DomainError("atom weights must be nonnegative");
    if (!std::isfinite(a.angle)) throw DomainError("atom angles must be finite");
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("atom weights must sum to 1");
}

CaratheodoryTuple from_atoms(const AtomicMeasure& mu, int m) {
  mu.validate();
  if (m < 1) throw DomainError("moment count must be positive");
  CaratheodoryTuple p(static_cast<std::size_t>(m), Complex{});
  for (const Atom& a : mu.atoms) {
    for (int n = 1; n <= m; ++n) p[n - 1] += 2.0 * a.weight * std::polar(1.0, -n * a.angle);
  }
  return p;
}

Eigen::MatrixXcd toeplitz(std::span<const Complex> p) {
  const int n = static_cast<int>(p.size()) + 1;
  Eigen::MatrixXcd T(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        T(j, k) = 2.0;
      } else if (j > k) {
        T(j, k) = p[j - k - 1];
      } else {
        T(j, k) = std::conj(p[k - j - 1]);
      }
    }
  }
  return T;
}

double min_eigenvalue(std::span<const Complex> p) {
  if (p.empty()) return 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz(p), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_admissible(std::span<const Complex> p, double tol) { return min_eigenvalue(p) >= -tol; }

double boundary_scale(std::span<const Complex> p) {
  // toeplitz(t p) = 2 I + t N with N the zero-diagonal part; N has trace 0,
  // so its smallest eigenvalue is negative unless p = 0.
  Eigen::MatrixXcd N = toeplitz(p);
  N.diagonal().setZero();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(N, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  if (lo >= 0.0) return std::numeric_limits<double>::infinity();
  return -2.0 / lo;
}

AtomicMeasure sample_measure(std::mt19937_64& rng, int max_atoms, bool restrict_real) {
  if (max_atoms < 1) throw DomainError("max_atoms must be at least 1");
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::exponential_distribution<double> expo(1.0);
  const int k = count(rng);
  AtomicMeasure mu;
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  for (int i = 0; i < k; ++i) {
    const double theta = angle(rng);
    const double weight = w[i] / total;
    if (restrict_real) {
      mu.atoms.push_back({theta, weight / 2});
      mu.atoms.push_back({theta == 0.0 ? 0.0 : 2.0 * std::numbers::pi - theta, weight / 2});
    } else {
      mu.atoms.push_back({theta, weight});
    }
  }
  return mu;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CaratheodoryTuple sample(std::uint64_t seed, int m, int max_atoms, bool restrict_real) {
  std::mt19937_64 rng(mix_seed(seed, 0));
  CaratheodoryTuple p = from_atoms(sample_measure(rng, max_atoms, restrict_real), m);
  if (restrict_real) {
    for (Complex& c : p) c = {c.real(), 0.0};
  }
  return p;
}

}  // namespace bikoeff
