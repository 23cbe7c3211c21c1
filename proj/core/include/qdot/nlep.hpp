// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "qdot/errors.hpp"
#include "qdot/field.hpp"
#include "qdot/mesh.hpp"

namespace qdot {

struct SolverOptions {
  /// gamma = hbar^2 / 2m in internal units (eV^2 nm^2).
  double gamma = 0.4441;
  double eig_tol = 1e-12;
  double root_tol = 1e-10;
  std::size_t max_outer = 200;
  std::size_t max_inner = 800;

  enum class LinearSolver { automatic, banded, cg };
  LinearSolver linear_solver = LinearSolver::automatic;
  /// Above this factorization size the automatic mode falls back to CG.
  std::size_t direct_solver_byte_budget = std::size_t(768) << 20;
};

struct LinearGroundState {
  double mu = 0.0;  ///< smallest eigenvalue of gamma L + diag(V)
  Field u;          ///< positive, measure-weighted L2 norm 1
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Smallest eigenpair of the frozen linear operator gamma L + diag(V) under
/// the mesh inner product. Shifted inverse power iteration on the banded
/// (or CG-solved) SPD matrix; `start` warm-starts the iteration. Throws
/// SolverError on non-convergence, carrying the last eigen-residual.
LinearGroundState linear_ground_state(const Mesh& mesh, const Field& V, double gamma,
                                      double tol, std::size_t max_inner = 800,
                                      const Field* start = nullptr,
                                      SolverOptions::LinearSolver solver =
                                          SolverOptions::LinearSolver::automatic);

/// Value of the Rayleigh functional at u, plus whether u lies in the
/// functional's domain (value < sqrt(max q); the problem is nonoverdamped,
/// so the domain is a proper subset). With q == 0 the restriction is
/// vacuous and in_domain is always true. Throws on u == 0.
struct RayleighValue {
  double value = 0.0;
  bool in_domain = false;
};

RayleighValue rayleigh_functional(const Mesh& mesh, const Field& p, const Field& q,
                                  const Field& u, double gamma);

struct GroundState {
  double lambda = 0.0;
  Field u;            ///< positive, measure-weighted L2 norm 1
  double residual = 0.0;
  double linear_mu = 0.0;  ///< smallest eigenvalue of the frozen operator at lambda
  std::size_t outer_iterations = 0;  ///< scalar-equation evaluations
  std::size_t inner_iterations = 0;  ///< total inverse-iteration steps
};

/// Ground state of the lambda-nonlinear problem
///   gamma L u + q u + 2 lambda p u = lambda^2 u
/// as the root of g(lambda) = mu_1(gamma L + q + 2 lambda p) - lambda^2:
/// bisection brackets the unique root (g decreases through it), Newton with
/// the Hellmann-Feynman derivative finishes. Throws ConditionViolated when
/// g has no sign change on [0, sqrt(max q) * 1.5].
GroundState solve_nonlinear(const Mesh& mesh, const Field& p, const Field& q,
                            const SolverOptions& opts = {});

/// || lambda^2 u - (gamma L u + q u + 2 lambda p u) || in the
/// measure-weighted L2 norm.
double residual(const Mesh& mesh, const Field& p, const Field& q, const GroundState& gs,
                double gamma);

}  // namespace qdot
