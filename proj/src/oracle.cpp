#include "bikoeff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>

#include <Eigen/Dense>

namespace bikoeff {

std::string to_string(Target t) {
  switch (t) {
    case Target::a2: return "a2";
    case Target::a3: return "a3";
    case Target::a4: return "a4";
    case Target::a5: return "a5";
  }
  return "a2";
}

Target parse_target(std::string_view text) {
  if (text == "a2") return Target::a2;
  if (text == "a3") return Target::a3;
  if (text == "a4") return Target::a4;
  if (text == "a5") return Target::a5;
  throw ParseError("unknown coefficient '" + std::string(text) + "' (expected a2, a3, a4 or a5)");
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Merit = |a_target| - kPenalty * (Toeplitz infeasibility of q).
constexpr double kPenalty = 10.0;
constexpr int kGoldenIterations = 12;

/// Atom parameters of a sample: p = t * Herglotz moments.
struct Candidate {
  std::vector<double> theta;
  std::vector<double> w;
  double t = 1.0;
  bool real = false;
};

CaratheodoryTuple moments(const Candidate& c, int m) {
  CaratheodoryTuple p(static_cast<std::size_t>(m), Complex{});
  for (std::size_t k = 0; k < c.theta.size(); ++k) {
    for (int n = 1; n <= m; ++n) {
      if (c.real) {
        p[n - 1] += Complex{2.0 * c.w[k] * std::cos(n * c.theta[k]), 0.0};
      } else {
        p[n - 1] += 2.0 * c.w[k] * std::polar(1.0, -n * c.theta[k]);
      }
    }
  }
  for (Complex& x : p) x *= c.t;
  return p;
}

Candidate draw(std::mt19937_64& rng, int max_atoms, bool real) {
  std::uniform_int_distribution<int> count(1, max_atoms);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  Candidate c;
  c.real = real;
  const int k = count(rng);
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    c.theta.push_back(unit(rng) * (real ? std::numbers::pi : kTwoPi));
    c.w.push_back(expo(rng));
    total += c.w.back();
  }
  for (double& x : c.w) x /= total;
  // Half the samples sit on the boundary of the body, the rest are shrunk
  // toward the center (mixing with the uniform measure).
  c.t = unit(rng) < 0.5 ? 1.0 : unit(rng);
  return c;
}

// Euclidean projection onto the probability simplex.
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }
  for (double& x : v) x = std::max(0.0, x - tau);
  return v;
}

class Search {
 public:
  Search(const ClassSpec& spec, Target target, const SearchConfig& cfg)
      : cfg_(cfg), m_(target == Target::a5 ? 4 : 3), index_(coefficient_index(target) - 2), sys_(spec, m_) {
    if (cfg.samples < 1) throw DomainError("samples must be at least 1");
    if (cfg.tol_feasible < 0 || cfg.tol_violation < 0) throw DomainError("tolerances must be nonnegative");
    if (cfg.max_atoms < 1) throw DomainError("max_atoms must be at least 1");
    for (const auto& s : cfg.starts) {
      if (static_cast<int>(s.size()) != m_) throw DomainError("explicit starts need " + std::to_string(m_) + " entries");
    }
  }

  void run() {
    // Min-heap of the best refine_top merits among earlier samples.
    std::priority_queue<double, std::vector<double>, std::greater<>> top;
    const int k = std::max(1, cfg_.refine_top);
    for (int i = 0; i < cfg_.samples; ++i) {
      current_index_ = i;
      double merit;
      std::optional<Candidate> cand;
      if (static_cast<std::size_t>(i) < cfg_.starts.size()) {
        merit = evaluate(cfg_.starts[static_cast<std::size_t>(i)]);
      } else {
        std::mt19937_64 rng(mix_seed(cfg_.seed, static_cast<std::uint64_t>(i)));
        const bool real = cfg_.restrict_real || i < cfg_.real_first;
        cand = draw(rng, cfg_.max_atoms, real);
        merit = evaluate(moments(*cand, m_));
      }
      const bool trigger = static_cast<int>(top.size()) < k || merit >= top.top();
      top.push(merit);
      if (static_cast<int>(top.size()) > k) top.pop();
      if (trigger && cand && cfg_.local_refine_steps > 0) refine(*cand, merit);
    }
  }

  bool found() const { return feasible_count_ > 0; }

  void fill(OracleReport& r) const {
    r.best_value = best_;
    r.witness_p = best_p_;
    r.witness_q = best_q_;
    r.witness_a = best_a_;
    r.witness_index = best_index_;
    r.feasible_count = feasible_count_;
    r.evaluations = evaluations_;
  }

 private:
  double evaluate(const CaratheodoryTuple& p) {
    ++evaluations_;
    const std::vector<Complex> a = sys_.solve(p);
    const std::vector<Complex> q = sys_.implied_q(a);
    const double lam = min_eigenvalue(q);
    const double value = std::abs(a[static_cast<std::size_t>(index_)]);
    if (!std::isfinite(value) || !std::isfinite(lam)) return -std::numeric_limits<double>::infinity();
    if (lam >= -cfg_.tol_feasible) {
      ++feasible_count_;
      if (value > best_) {
        best_ = value;
        best_p_ = p;
        best_q_ = q;
        best_a_ = a;
        best_index_ = current_index_;
      }
    }
    return value - kPenalty * std::max(0.0, -lam);
  }

  double evaluate(const Candidate& c) { return evaluate(moments(c, m_)); }

  // Maximizes along one coordinate with golden-section search; keeps the
  // current value unless a strictly better point is found.
  void golden(Candidate& c, double& merit, double* coord, double lo, double hi) {
    const double keep = *coord;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
    *coord = x1;
    double f1 = evaluate(c);
    *coord = x2;
    double f2 = evaluate(c);
    double best_x = keep, best_f = merit;
    auto note = [&](double x, double f) {
      if (f > best_f) {
        best_f = f;
        best_x = x;
      }
    };
    note(x1, f1);
    note(x2, f2);
    for (int it = 0; it < kGoldenIterations; ++it) {
      if (f1 >= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - ratio * (b - a);
        *coord = x1;
        f1 = evaluate(c);
        note(x1, f1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + ratio * (b - a);
        *coord = x2;
        f2 = evaluate(c);
        note(x2, f2);
      }
    }
    *coord = best_x;
    merit = best_f;
  }

  void refine(Candidate c, double merit) {
    double delta = 0.5, delta_t = 0.25, step = 0.25;
    for (int sweep = 0; sweep < cfg_.local_refine_steps; ++sweep) {
      for (double& theta : c.theta) golden(c, merit, &theta, theta - delta, theta + delta);
      golden(c, merit, &c.t, std::max(0.0, c.t - delta_t), std::min(1.0, c.t + delta_t));
      if (c.w.size() > 1) {
        // Projected gradient ascent on the weight simplex.
        const double h = 1e-7;
        std::vector<double> grad(c.w.size());
        for (std::size_t k = 0; k < c.w.size(); ++k) {
          Candidate probe = c;
          probe.w[k] += h;
          grad[k] = (evaluate(probe) - merit) / h;
        }
        for (double eta = step; eta > step / 16; eta /= 2) {
          Candidate trial = c;
          for (std::size_t k = 0; k < c.w.size(); ++k) trial.w[k] += eta * grad[k];
          trial.w = project_simplex(trial.w);
          const double f = evaluate(trial);
          if (f > merit) {
            c = trial;
            merit = f;
            break;
          }
        }
      }
      delta *= 0.6;
      delta_t *= 0.6;
      step *= 0.6;
    }
  }

  const SearchConfig& cfg_;
  int m_;
  int index_;
  CoefficientSystem<Complex> sys_;
  int current_index_ = 0;
  double best_ = -1.0;
  CaratheodoryTuple best_p_, best_q_;
  std::vector<Complex> best_a_;
  std::int64_t best_index_ = -1;
  std::int64_t feasible_count_ = 0;
  std::int64_t evaluations_ = 0;
};

OracleReport run_search(const ClassSpec& spec, Target target, const SearchConfig& cfg, double bound) {
  Search search(spec, target, cfg);
  search.run();
  if (!search.found()) throw SearchError("search produced no feasible system");
  OracleReport r;
  r.target = target;
  r.spec = spec;
  search.fill(r);
  r.bound_value = bound;
  r.slack = bound - r.best_value;
  r.violated = r.best_value > bound + cfg.tol_violation;
  return r;
}

std::optional<std::pair<A5Family, Rational>> a5_family_of(const ClassSpec& spec) {
  if (spec.op != OperatorKind::ST || spec.lambda != 0) return std::nullopt;
  if (spec.generator.family == GeneratorFamily::Order) return std::pair{A5Family::STrho, spec.generator.param("rho")};
  if (spec.generator.family == GeneratorFamily::Strong) return std::pair{A5Family::SSbeta, spec.generator.param("beta")};
  return std::nullopt;
}

}  // namespace

OracleReport max_coeff(const ClassSpec& spec, Target target, const SearchConfig& cfg) {
  if (target == Target::a5) {
    auto fam = a5_family_of(spec);
    if (!fam) throw DomainError("a5 bounds exist only for st:lambda=0 with the order or strong generator");
    return check_a5_system(fam->first, fam->second, cfg);
  }
  const double bound = class_bounds(spec).at(coefficient_index(target)).value;
  return run_search(spec, target, cfg, bound);
}

OracleReport check_a5_system(A5Family family, const Rational& param, const SearchConfig& cfg) {
  const double x = param.get_d();
  std::vector<VariantCheck> variants;
  ClassSpec spec;
  if (family == A5Family::STrho) {
    variants = {{A5Variant::Stated, st_rho_a5(x, A5Variant::Stated), false, false},
                {A5Variant::Proof, st_rho_a5(x, A5Variant::Proof), true, false}};
    spec = make_spec(OperatorKind::ST, 0, order_coeffs(param));
  } else {
    variants = {{A5Variant::Stated, ss_beta_a5(x, A5Variant::Stated), false, false},
                {A5Variant::Rederived, ss_beta_a5(x, A5Variant::Rederived), true, false}};
    spec = make_spec(OperatorKind::ST, 0, strong_coeffs(param));
  }
  OracleReport r = run_search(spec, Target::a5, cfg, variants[1].bound);
  for (auto& v : variants) v.violated = r.best_value > v.bound + cfg.tol_violation;
  r.variants = variants;
  return r;
}

// ---------------------------------------------------------------------------
// Atom fitting

namespace {

CaratheodoryTuple measure_moments(const std::vector<double>& theta, const std::vector<double>& w, int m) {
  CaratheodoryTuple p(static_cast<std::size_t>(m), Complex{});
  for (std::size_t k = 0; k < theta.size(); ++k) {
    for (int n = 1; n <= m; ++n) p[n - 1] += 2.0 * w[k] * std::polar(1.0, -n * theta[k]);
  }
  return p;
}

// Angles of the roots of sum_j u_j zeta^j.
std::vector<double> kernel_angles(const Eigen::VectorXcd& u) {
  const int deg = static_cast<int>(u.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -u(i) / u(deg);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
  std::vector<double> angles;
  for (int i = 0; i < deg; ++i) angles.push_back(std::arg(es.eigenvalues()(i)));
  return angles;
}

std::vector<double> fit_weights(const std::vector<double>& theta, const CaratheodoryTuple& p) {
  const int m = static_cast<int>(p.size());
  const int K = static_cast<int>(theta.size());
  Eigen::MatrixXd A(2 * m + 1, K);
  Eigen::VectorXd b(2 * m + 1);
  for (int k = 0; k < K; ++k) A(0, k) = 2.0;
  b(0) = 2.0;
  for (int n = 1; n <= m; ++n) {
    for (int k = 0; k < K; ++k) {
      const Complex e = 2.0 * std::polar(1.0, -n * theta[k]);
      A(2 * n - 1, k) = e.real();
      A(2 * n, k) = e.imag();
    }
    b(2 * n - 1) = p[n - 1].real();
    b(2 * n) = p[n - 1].imag();
  }
  Eigen::VectorXd w = A.completeOrthogonalDecomposition().solve(b);
  return std::vector<double>(w.data(), w.data() + K);
}

// Levenberg-Marquardt polish of (theta, w) against the moment equations.
void polish(std::vector<double>& theta, std::vector<double>& w, const CaratheodoryTuple& p) {
  const int m = static_cast<int>(p.size());
  const int K = static_cast<int>(theta.size());
  auto residual = [&](const std::vector<double>& th, const std::vector<double>& ww) {
    Eigen::VectorXd r(2 * m + 1);
    double total = 0.0;
    for (double x : ww) total += x;
    r(0) = 2.0 * (total - 1.0);
    auto mom = measure_moments(th, ww, m);
    for (int n = 1; n <= m; ++n) {
      r(2 * n - 1) = (mom[n - 1] - p[n - 1]).real();
      r(2 * n) = (mom[n - 1] - p[n - 1]).imag();
    }
    return r;
  };
  double mu = 1e-6;
  Eigen::VectorXd r = residual(theta, w);
  for (int it = 0; it < 100 && r.lpNorm<Eigen::Infinity>() > 1e-15; ++it) {
    Eigen::MatrixXd J(2 * m + 1, 2 * K);
    for (int k = 0; k < K; ++k) {
      J(0, k) = 0.0;
      J(0, K + k) = 2.0;
      for (int n = 1; n <= m; ++n) {
        const Complex e = 2.0 * std::polar(1.0, -n * theta[k]);
        const Complex dtheta = w[k] * Complex{0.0, -static_cast<double>(n)} * e;
        J(2 * n - 1, k) = dtheta.real();
        J(2 * n, k) = dtheta.imag();
        J(2 * n - 1, K + k) = e.real();
        J(2 * n, K + k) = e.imag();
      }
    }
    Eigen::MatrixXd H = J.transpose() * J;
    H.diagonal().array() += mu;
    Eigen::VectorXd step = H.ldlt().solve(-J.transpose() * r);
    std::vector<double> th2 = theta, w2 = w;
    for (int k = 0; k < K; ++k) {
      th2[k] += step(k);
      w2[k] = std::max(0.0, w2[k] + step(K + k));
    }
    Eigen::VectorXd r2 = residual(th2, w2);
    if (r2.norm() < r.norm()) {
      theta = th2;
      w = w2;
      r = r2;
      mu = std::max(mu / 10.0, 1e-15);
    } else {
      mu *= 10.0;
      if (mu > 1e6) break;
    }
  }
}

}  // namespace

double moment_residual(const AtomicMeasure& mu, const CaratheodoryTuple& p) {
  std::vector<double> theta, w;
  for (const Atom& a : mu.atoms) {
    theta.push_back(a.angle);
    w.push_back(a.weight);
  }
  auto mom = measure_moments(theta, w, static_cast<int>(p.size()));
  double r = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) r = std::max(r, std::abs(mom[n] - p[n]));
  return r;
}

AtomicMeasure fit_atoms(const CaratheodoryTuple& p, int max_atoms) {
  if (p.empty()) throw DomainError("fit_atoms needs at least one coefficient");
  if (!is_admissible(p, 1e-8)) throw DomainError("tuple is not admissible");
  const int m = static_cast<int>(p.size());
  constexpr double kSingular = 1e-10;

  // Smallest k with a singular Toeplitz section; otherwise extend by one
  // moment on the boundary of the admissible disk, which forces singularity.
  std::vector<Complex> c(p.begin(), p.end());
  int k = 0;
  for (int j = 1; j <= m; ++j) {
    if (min_eigenvalue(std::span<const Complex>(c.data(), static_cast<std::size_t>(j))) <= kSingular) {
      k = j;
      break;
    }
  }
  if (k == 0) {
    // T_{m+1} = [[c0, r^*, x^*], [r, M, s], [x, s^*, c0]] with M = T_{m-1}.
    Eigen::MatrixXcd M = toeplitz(std::span<const Complex>(c.data(), static_cast<std::size_t>(m - 1)));
    Eigen::VectorXcd r(m), s(m);
    for (int j = 0; j < m; ++j) {
      r(j) = c[j];
      s(j) = std::conj(c[m - 1 - j]);
    }
    auto solver = M.ldlt();
    const Complex rr = r.dot(solver.solve(r));  // r^* M^-1 r
    const Complex ss = s.dot(solver.solve(s));
    const Complex center = s.dot(solver.solve(r));  // s^* M^-1 r
    const double radius = std::sqrt(std::max(0.0, (2.0 - rr.real()) * (2.0 - ss.real())));
    c.push_back(center + radius);
    k = m + 1;
  }
  if (k > max_atoms) throw DomainError("tuple needs " + std::to_string(k) + " atoms, more than max_atoms");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(toeplitz(std::span<const Complex>(c.data(), static_cast<std::size_t>(k))));
  Eigen::VectorXcd u = es.eigenvectors().col(0);
  std::vector<double> theta = kernel_angles(u);
  std::vector<double> w = fit_weights(theta, p);
  polish(theta, w, p);

  AtomicMeasure mu;
  double total = 0.0;
  for (double& x : w) total += (x = std::max(0.0, x));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    double angle = std::fmod(theta[i], kTwoPi);
    if (angle < 0) angle += kTwoPi;
    mu.atoms.push_back({angle, w[i] / total});
  }
  return mu;
}

}  // namespace bikoeff
