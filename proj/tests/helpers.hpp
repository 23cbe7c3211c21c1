// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "qdot/admissibility.hpp"
#include "qdot/field.hpp"
#include "qdot/mesh.hpp"
#include "qdot/rearrange.hpp"

namespace qdot::test {

/// Uniform 1D chain of n cells (a degenerate rectangle), handy for
/// exhaustive oracles.
inline Mesh strip_mesh(std::size_t n, double h = 1.0) {
  return detail::assemble_rectangle(h * static_cast<double>(n), h, n, 1);
}

inline Field random_field(const Mesh& mesh, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 1.0) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Field f(mesh.cell_count());
  for (double& x : f) x = unif(rng);
  return f;
}

/// Smooth non-negative radial field: sum of up to `bumps` Gaussians in r.
inline Field gaussian_bumps(const Mesh& mesh, std::mt19937_64& rng, int bumps) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double R = mesh.radius;
  std::vector<double> a(bumps), c(bumps), s(bumps);
  for (int b = 0; b < bumps; ++b) {
    a[b] = 0.3 + unif(rng);
    c[b] = 0.8 * R * unif(rng);
    s[b] = R * (0.08 + 0.25 * unif(rng));
  }
  Field f(mesh.cell_count(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double r = mesh.coord1[i];
    for (int b = 0; b < bumps; ++b) {
      const double d = (r - c[b]) / s[b];
      f[i] += a[b] * std::exp(-d * d);
    }
  }
  return f;
}

struct RandomInstance {
  Field p0, q0;
  Distribution p_dist, q_dist;
  double gamma = 0.0;
  double c_omega = 0.0;
  double cond_q_lhs = 0.0;
};

/// Random instance satisfying both admissibility conditions: p heights stay
/// below the p-class bound, the q height is grown until the q-class bound
/// holds. Placement is by a random weight through the
/// rearrangement kernel. Returns nullopt when the growth loop gives up.
inline std::optional<RandomInstance> random_admissible_instance(const Mesh& mesh,
                                                                double gamma,
                                                                std::mt19937_64& rng) {
  RandomInstance inst;
  inst.gamma = gamma;
  const double area = mesh.domain_area();
  const LinearGroundState ground =
      linear_ground_state(mesh, Field(mesh.cell_count(), 0.0), 1.0, 1e-12);
  inst.c_omega = ground.mu;
  const Field& psi = ground.u;

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double p_bound = 0.5 * std::sqrt(gamma * inst.c_omega);
  const double p_height = p_bound * (0.25 + 0.6 * unif(rng));
  const double p_frac = 0.08 + 0.3 * unif(rng);
  const double q_frac = 0.08 + 0.3 * unif(rng);

  const Field w = random_field(mesh, rng);
  double q_height = 1.0;
  for (int attempt = 0; attempt < 60; ++attempt) {
    const Distribution q_dist(
        {{q_height, q_frac * area}, {0.0, (1.0 - q_frac) * area}});
    const Distribution p_dist(
        {{p_height, p_frac * area}, {0.0, (1.0 - p_frac) * area}});
    const ConditionQ cq = check_condition_q(mesh, p_dist, q_dist, psi, gamma);
    const ConditionP cp = check_condition_p(p_dist, gamma, inst.c_omega);
    if (cp.ok && cq.ok) {
      inst.p_dist = p_dist;
      inst.q_dist = q_dist;
      inst.cond_q_lhs = cq.lhs;
      inst.p0 = opposite_rearrangement(mesh, p_dist, w);
      inst.q0 = bathtub_min(mesh, q_dist, w);
      return inst;
    }
    q_height *= 1.6;
  }
  return std::nullopt;
}

}  // namespace qdot::test
