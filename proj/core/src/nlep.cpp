// SPDX-License-Identifier: Apache-2.0
#include "qdot/nlep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "qdot/linalg.hpp"

namespace qdot {

namespace {

void check_sizes(const Mesh& mesh, const Field& f, const char* what) {
  if (f.size() != mesh.cell_count())
    throw std::invalid_argument(std::string(what) + ": field does not match mesh");
}

double m_dot(const Mesh& mesh, const Field& u, const Field& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i] * mesh.measure[i];
  return s;
}

void m_normalize(const Mesh& mesh, Field& u) {
  const double nrm = std::sqrt(m_dot(mesh, u, u));
  if (!(nrm > 0.0)) throw SolverError("eigensolver: iterate collapsed to zero");
  const double inv = 1.0 / nrm;
  for (double& x : u) x *= inv;
}

/// A = gamma L + diag(V), symmetric under the measure inner product.
struct FrozenOperator {
  const Mesh& mesh;
  const Field& V;
  double gamma;

  void apply(const Field& x, Field& y) const {
    y.resize(x.size());
    mesh.weighted_laplacian.apply(x.data(), y.data());
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = gamma * y[i] / mesh.measure[i] + V[i] * x[i];
  }
};

/// Solves (A - sigma) w = u in the measure sense via the symmetric matrix
/// B_sigma = gamma B_L + M (V - sigma): either a banded Cholesky or
/// Jacobi-preconditioned CG, depending on the factorization size.
class ShiftedSolver {
 public:
  ShiftedSolver(const Mesh& mesh, const Field& V, double gamma, double sigma,
                SolverOptions::LinearSolver mode, std::size_t byte_budget)
      : mesh_(mesh), V_(V), gamma_(gamma), sigma_(sigma) {
    use_direct_ = mode != SolverOptions::LinearSolver::cg;
    if (mode == SolverOptions::LinearSolver::automatic &&
        BandedCholesky::estimate_bytes(mesh.weighted_laplacian) > byte_budget)
      use_direct_ = false;
    if (use_direct_) {
      factor();
    } else {
      const auto& bl = mesh_.weighted_laplacian;
      diag_.resize(mesh_.cell_count());
      for (std::size_t i = 0; i < diag_.size(); ++i)
        diag_[i] = gamma_ * bl.bands[0][i] + mesh_.measure[i] * (V_[i] - sigma_);
    }
  }

  double sigma() const { return sigma_; }

  /// Refactors at a new shift; throws SolverError when B_sigma loses
  /// positive definiteness (shift at or past the smallest eigenvalue).
  void reshift(double sigma) {
    const double old = sigma_;
    sigma_ = sigma;
    if (use_direct_) {
      try {
        factor();
      } catch (const SolverError&) {
        sigma_ = old;
        throw;
      }
    } else {
      const auto& bl = mesh_.weighted_laplacian;
      for (std::size_t i = 0; i < diag_.size(); ++i)
        diag_[i] = gamma_ * bl.bands[0][i] + mesh_.measure[i] * (V_[i] - sigma_);
    }
  }

  // w satisfies B_sigma w = M u.
  void solve(const Field& u, Field& w) const {
    const std::size_t n = mesh_.cell_count();
    rhs_.resize(n);
    for (std::size_t i = 0; i < n; ++i) rhs_[i] = u[i] * mesh_.measure[i];
    if (use_direct_) {
      chol_->solve(rhs_);
      w = rhs_;
    } else {
      auto apply = [this](const double* x, double* y) {
        mesh_.weighted_laplacian.apply(x, y);
        const std::size_t n2 = mesh_.cell_count();
        for (std::size_t i = 0; i < n2; ++i)
          y[i] = gamma_ * y[i] + mesh_.measure[i] * (V_[i] - sigma_) * x[i];
      };
      pcg_solve(n, apply, diag_, rhs_, w, 1e-13, 40 * n + 200);
    }
  }

 private:
  void factor() {
    std::vector<double> extra(mesh_.cell_count());
    for (std::size_t i = 0; i < extra.size(); ++i)
      extra[i] = mesh_.measure[i] * (V_[i] - sigma_);
    chol_ = std::make_unique<BandedCholesky>(mesh_.weighted_laplacian, gamma_, extra);
  }

  const Mesh& mesh_;
  const Field& V_;
  double gamma_;
  double sigma_;
  bool use_direct_ = true;
  std::unique_ptr<BandedCholesky> chol_;
  std::vector<double> diag_;
  mutable std::vector<double> rhs_;
};

}  // namespace

LinearGroundState linear_ground_state(const Mesh& mesh, const Field& V, double gamma,
                                      double tol, std::size_t max_inner,
                                      const Field* start,
                                      SolverOptions::LinearSolver solver) {
  check_sizes(mesh, V, "linear_ground_state");
  if (!(gamma > 0.0))
    throw std::invalid_argument("linear_ground_state: gamma must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("linear_ground_state: tol must be positive");

  const std::size_t n = mesh.cell_count();
  const double vmin = *std::min_element(V.begin(), V.end());

  // Rounding floor for the eigen-residual: one apply of A already carries
  // O(eps ||A||) noise, so demanding less than that can never converge.
  double diag_max = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d =
        gamma * mesh.weighted_laplacian.bands[0][i] / mesh.measure[i] + std::abs(V[i]);
    diag_max = std::max(diag_max, d);
  }
  const double res_floor = 64.0 * std::numeric_limits<double>::epsilon() * diag_max;

  // gamma L is strictly positive definite, so any sigma <= min(V) is safe.
  double sigma = vmin - 1e-8 * (1.0 + std::abs(vmin));
  ShiftedSolver lin(mesh, V, gamma, sigma, solver, SolverOptions{}.direct_solver_byte_budget);
  FrozenOperator op{mesh, V, gamma};

  Field u;
  if (start && start->size() == n) {
    u = *start;
  } else {
    u.assign(n, 1.0);
  }
  m_normalize(mesh, u);

  Field w(n), Au(n);
  double mu = 0.0, res = std::numeric_limits<double>::infinity();
  std::size_t iters = 0;
  std::size_t reshifts = 0;
  bool converged = false;

  for (iters = 1; iters <= max_inner; ++iters) {
    lin.solve(u, w);
    m_normalize(mesh, w);
    u.swap(w);
    op.apply(u, Au);
    mu = m_dot(mesh, u, Au);
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = Au[i] - mu * u[i];
      r2 += d * d * mesh.measure[i];
    }
    res = std::sqrt(r2);
    if (res <= tol * (1.0 + std::abs(mu)) + res_floor) {
      converged = true;
      break;
    }
    // Safeguarded Rayleigh-quotient reshift: mu - res is a certified lower
    // bound once the ground state is the nearest eigenvalue; overshoots are
    // caught by the factorization and rolled back.
    if (iters % 20 == 0 && reshifts < 8 && res < 0.25 * (mu - lin.sigma())) {
      const double cand = mu - 2.0 * res - 1e-10 * (1.0 + std::abs(mu));
      if (cand > lin.sigma()) {
        try {
          lin.reshift(cand);
          ++reshifts;
        } catch (const SolverError&) {
          // keep the old shift
        }
      }
    }
  }
  if (!converged)
    throw SolverError("linear_ground_state: no convergence after " +
                          std::to_string(max_inner) + " iterations (residual " +
                          std::to_string(res) + ")",
                      res);

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += u[i] * mesh.measure[i];
  if (mean < 0.0)
    for (double& x : u) x = -x;

  return LinearGroundState{mu, std::move(u), res, iters};
}

RayleighValue rayleigh_functional(const Mesh& mesh, const Field& p, const Field& q,
                                  const Field& u, double gamma) {
  check_sizes(mesh, p, "rayleigh_functional");
  check_sizes(mesh, q, "rayleigh_functional");
  check_sizes(mesh, u, "rayleigh_functional");
  const double s = m_dot(mesh, u, u);
  if (!(s > 0.0)) throw std::invalid_argument("rayleigh_functional: u must be nonzero");

  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double u2m = u[i] * u[i] * mesh.measure[i];
    a += p[i] * u2m;
    b += q[i] * u2m;
  }
  const double e = dirichlet_energy(mesh, u);
  const double value = (a + std::sqrt(a * a + (b + gamma * e) * s)) / s;

  const double qmax = q.empty() ? 0.0 : *std::max_element(q.begin(), q.end());
  const bool in_domain = qmax > 0.0 ? value < std::sqrt(qmax) : true;
  return RayleighValue{value, in_domain};
}

GroundState solve_nonlinear(const Mesh& mesh, const Field& p, const Field& q,
                            const SolverOptions& opts) {
  check_sizes(mesh, p, "solve_nonlinear");
  check_sizes(mesh, q, "solve_nonlinear");
  for (double v : p)
    if (!(v >= 0.0)) throw std::invalid_argument("solve_nonlinear: p must be non-negative");
  for (double v : q)
    if (!(v >= 0.0)) throw std::invalid_argument("solve_nonlinear: q must be non-negative");

  const std::size_t n = mesh.cell_count();
  const double pmax = p.empty() ? 0.0 : *std::max_element(p.begin(), p.end());
  const double qmax = q.empty() ? 0.0 : *std::max_element(q.begin(), q.end());

  Field warm;
  std::size_t inner_total = 0;
  std::size_t evals = 0;
  Field V(n);

  struct Eval {
    double g;
    double mu;
    double p_integral;  // int p u^2 dm, the Hellmann-Feynman ingredient
  };

  auto evaluate = [&](double lam) -> Eval {
    if (++evals > opts.max_outer)
      throw SolverError("solve_nonlinear: outer iteration budget exhausted");
    for (std::size_t i = 0; i < n; ++i) V[i] = q[i] + 2.0 * lam * p[i];
    const Field* start = warm.empty() ? nullptr : &warm;
    LinearGroundState lgs = linear_ground_state(mesh, V, opts.gamma, opts.eig_tol,
                                                opts.max_inner, start, opts.linear_solver);
    inner_total += lgs.iterations;
    warm = std::move(lgs.u);
    double pint = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      pint += p[i] * warm[i] * warm[i] * mesh.measure[i];
    return Eval{lgs.mu - lam * lam, lgs.mu, pint};
  };

  double lambda = 0.0;
  Eval ev = evaluate(0.0);
  const double mu0 = ev.mu;
  if (!(mu0 > 0.0))
    throw SolverError("solve_nonlinear: frozen operator at lambda=0 is not positive");

  if (pmax == 0.0) {
    // mu_1 does not depend on lambda: the root is explicit.
    lambda = std::sqrt(mu0);
    ev.g = mu0 - lambda * lambda;
  } else {
    // Bracket the unique root. mu_1(lam) <= mu_1(0) + 2 lam max(p) yields the
    // rigorous upper bound used when the interval (0, sqrt(max q)) and its
    // 50% expansion miss the root (constant potentials do that; with q == 0
    // the interval is empty outright).
    const double lambda_ub = (pmax + std::sqrt(pmax * pmax + mu0)) * (1.0 + 1e-9);
    double hi = qmax > 0.0 ? std::sqrt(qmax) : lambda_ub;
    const double width_target = std::max(1e-3 * hi, 1e-14);
    Eval ev_hi = evaluate(hi);
    if (ev_hi.g >= 0.0) {
      hi = std::max(1.5 * hi, lambda_ub);
      ev_hi = evaluate(hi);
      if (ev_hi.g >= 0.0)
        throw ConditionViolated(
            "solve_nonlinear: g(lambda) = mu_1(lambda) - lambda^2 has no sign change on "
            "[0, " + std::to_string(hi) + "]; the admissibility hypotheses fail "
            "(g at the right end: " + std::to_string(ev_hi.g) + ")");
    }
    double lo = 0.0;
    while (hi - lo > width_target) {
      const double mid = 0.5 * (lo + hi);
      ev = evaluate(mid);
      if (ev.g > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    lambda = 0.5 * (lo + hi);
    ev = evaluate(lambda);
    if (ev.g > 0.0)
      lo = lambda;
    else
      hi = lambda;

    // Newton with d g / d lambda = 2 int p u^2 - 2 lambda, safeguarded by
    // the bracket.
    for (std::size_t k = 0; k < 60; ++k) {
      if (std::abs(ev.g) <= opts.root_tol * (1.0 + lambda * lambda)) break;
      const double slope = 2.0 * ev.p_integral - 2.0 * lambda;
      double next = slope < 0.0 ? lambda - ev.g / slope : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      lambda = next;
      ev = evaluate(lambda);
      if (ev.g > 0.0)
        lo = lambda;
      else
        hi = lambda;
    }
    if (std::abs(ev.g) > opts.root_tol * (1.0 + lambda * lambda) &&
        std::abs(ev.g) > 64.0 * opts.eig_tol * (1.0 + lambda * lambda))
      throw SolverError("solve_nonlinear: scalar root refinement stalled, |g| = " +
                            std::to_string(std::abs(ev.g)),
                        std::abs(ev.g));
  }

  GroundState gs;
  gs.lambda = lambda;
  gs.u = warm;
  gs.linear_mu = ev.mu;
  gs.outer_iterations = evals;
  gs.inner_iterations = inner_total;
  gs.residual = residual(mesh, p, q, gs, opts.gamma);
  return gs;
}

double residual(const Mesh& mesh, const Field& p, const Field& q, const GroundState& gs,
                double gamma) {
  check_sizes(mesh, gs.u, "residual");
  Field Lu(gs.u.size());
  mesh.apply_laplacian(gs.u, Lu);
  double r2 = 0.0;
  const double lam2 = gs.lambda * gs.lambda;
  for (std::size_t i = 0; i < gs.u.size(); ++i) {
    const double d =
        lam2 * gs.u[i] - (gamma * Lu[i] + q[i] * gs.u[i] + 2.0 * gs.lambda * p[i] * gs.u[i]);
    r2 += d * d * mesh.measure[i];
  }
  return std::sqrt(r2);
}

}  // namespace qdot
