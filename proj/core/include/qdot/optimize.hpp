// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdot/field.hpp"
#include "qdot/mesh.hpp"
#include "qdot/nlep.hpp"

namespace qdot {

enum class StartPolicy {
  adversarial,  ///< monotone rearrangement against the center weight: mass
                ///< where the ground mode will peak, a deliberately bad start
  schwarz,      ///< mass pushed to the boundary (the expected optimum on disks)
  random,       ///< seeded random placement
  custom,       ///< caller-provided fields
};

struct StartSpec {
  StartPolicy policy = StartPolicy::adversarial;
  std::uint64_t seed = 0;
  Field p0, q0;  ///< used by StartPolicy::custom
};

struct OptimizationReport {
  std::vector<double> lambda_history;
  Field p_final, q_final, u_final;
  GroundState final_state;
  std::size_t iterations = 0;
  bool converged = false;
  bool cycled = false;
  bool monotone = true;
  /// Measure-weighted L1 distance between the last two (p, q) iterates.
  double fixed_point_gap = 0.0;
  /// Larger of the per-field L1 gaps to the Schwarz increasing
  /// rearrangements of the generators; disk meshes only.
  std::optional<double> schwarz_gap;
  std::optional<double> schwarz_gap_p;
  std::optional<double> schwarz_gap_q;
  /// Update candidates rejected because they would have raised the weighted
  /// integral (possible on non-uniform meshes at the one-cell level).
  std::size_t safeguard_rejections = 0;
  std::vector<std::string> notes;

  double lambda() const { return lambda_history.empty() ? 0.0 : lambda_history.back(); }
};

/// Called after every solve with the iterate; hook for snapshot dumps.
using IterationObserver =
    std::function<void(std::size_t iter, const GroundState& gs, const Field& p,
                       const Field& q)>;

/// Alternating minimization: solve the nonlinear eigenproblem, update q by
/// the bathtub minimizer and p by the decreasing monotone rearrangement
/// against u^2, repeat until both fields are fixed and lambda stagnates
/// within tol. An update is only accepted when it does not increase its
/// weighted integral, which makes the lambda history non-increasing to
/// rounding on every mesh; on uniform meshes the candidates always pass.
/// Non-convergence and detected cycles return converged = false with the
/// best iterate, never an exception.
OptimizationReport minimize_ground_state(const Mesh& mesh, const Distribution& p_dist,
                                         const Distribution& q_dist,
                                         const SolverOptions& opts, std::size_t max_iters,
                                         double tol, const StartSpec& start = {},
                                         const IterationObserver& observer = {});

struct DescentStep {
  Field p, q;
  GroundState next;
};

/// One raw update pair from gs.u plus the re-solved ground state;
/// lambda_next <= lambda + 1e-12 wherever the class updates are exact.
DescentStep descent_step(const Mesh& mesh, const Distribution& p_dist,
                         const Distribution& q_dist, const GroundState& gs,
                         const SolverOptions& opts);

struct FixedPointCertificate {
  bool p_matches = false;
  bool q_matches = false;
  std::vector<std::size_t> p_offending;  ///< cells where the recomputed update differs
  std::vector<std::size_t> q_offending;
  std::optional<double> schwarz_gap_p;
  std::optional<double> schwarz_gap_q;

  bool ok() const { return p_matches && q_matches; }
};

/// Recomputes both updates from report.u_final and checks they reproduce
/// the converged fields cell for cell; on disk meshes also records the L1
/// gaps to the Schwarz increasing rearrangements of the generators.
FixedPointCertificate certify_fixed_point(const Mesh& mesh,
                                          const OptimizationReport& report,
                                          const Distribution& p_dist,
                                          const Distribution& q_dist);

}  // namespace qdot
