// SPDX-License-Identifier: Apache-2.0
#include "qdot/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdot/rearrange.hpp"

namespace qdot {

namespace constants {

double gamma_si_to_internal(double gamma_si_value) {
  // J m^2 -> eV nm^2, reinterpreted on the internal energy^2 scale.
  return gamma_si_value / electron_volt * 1e18;
}

std::string unit_reconstruction_note() {
  return "units: internal scale treats q, lambda^2 and gamma|grad u|^2 as energy^2 (eV^2) "
         "while p and lambda carry energy (eV); published potential heights are used "
         "verbatim on that scale and gamma defaults to 0.4441 eV^2 nm^2 "
         "(raw SI conversion: 0.44402)";
}

}  // namespace constants

double poincare_constant(const Mesh& mesh, double tol) {
  const Field zero(mesh.cell_count(), 0.0);
  return linear_ground_state(mesh, zero, 1.0, tol).mu;
}

Field laplacian_ground_mode(const Mesh& mesh, double tol) {
  const Field zero(mesh.cell_count(), 0.0);
  return linear_ground_state(mesh, zero, 1.0, tol).u;
}

ConditionP check_condition_p(const Distribution& p_dist, double gamma, double c_omega) {
  if (!(gamma > 0.0) || !(c_omega > 0.0))
    throw std::invalid_argument("check_condition_p: gamma and C_Omega must be positive");
  if (p_dist.min_value() < 0.0)
    throw std::invalid_argument("check_condition_p: p must be non-negative");
  ConditionP out;
  out.rhs = 0.5 * std::sqrt(gamma * c_omega);
  const double pmax = p_dist.max_value();
  out.margin = out.rhs - pmax;
  out.ok = pmax < out.rhs;
  return out;
}

ConditionQ check_condition_q(const Mesh& mesh, const Distribution& p_dist,
                             const Distribution& q_dist, const Field& psi, double gamma) {
  if (!q_dist.two_level())
    throw std::invalid_argument("check_condition_q: q class must be characteristic");
  if (psi.size() != mesh.cell_count())
    throw std::invalid_argument("check_condition_q: psi does not match mesh");

  Field psi2(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) psi2[i] = psi[i] * psi[i];

  // The integral maximizers of both classes against psi^2. For the
  // characteristic q class this is the bathtub maximizer; the p class may
  // have several levels, where the increasing monotone rearrangement is the
  // same extremizer.
  const Field p_tilde = similar_rearrangement(mesh, p_dist, psi2);
  const Field q_tilde = bathtub_max(mesh, q_dist, psi2);

  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    a += p_tilde[i] * psi2[i] * mesh.measure[i];
    b += q_tilde[i] * psi2[i] * mesh.measure[i];
  }
  const double e = dirichlet_energy(mesh, psi);

  ConditionQ out;
  out.lhs = a + std::sqrt(a * a + b + gamma * e);
  const double qmax = q_dist.max_value();
  out.rhs = qmax > 0.0 ? std::sqrt(qmax) : 0.0;
  out.degenerate = !(qmax > 0.0);
  out.ok = !out.degenerate && out.lhs < out.rhs;
  return out;
}

ConfinementMask confinement_mask(const Mesh& mesh, const Field& p, const Field& q,
                                 const GroundState& gs) {
  if (p.size() != mesh.cell_count() || q.size() != mesh.cell_count())
    throw std::invalid_argument("confinement_mask: fields do not match mesh");
  ConfinementMask out;
  out.mask.assign(mesh.cell_count(), 0.0);
  const double lam2 = gs.lambda * gs.lambda;
  for (std::size_t i = 0; i < out.mask.size(); ++i) {
    const double v = q[i] + 2.0 * gs.lambda * p[i];
    if (v < lam2) {
      out.mask[i] = 1.0;
      out.confined_measure += mesh.measure[i];
    }
  }
  return out;
}

AdmissibilityReport check_admissibility(const Mesh& mesh, const Distribution& p_dist,
                                        const Distribution& q_dist, double gamma,
                                        double tol) {
  AdmissibilityReport rep;
  const LinearGroundState ground = linear_ground_state(
      mesh, Field(mesh.cell_count(), 0.0), 1.0, tol);
  rep.c_omega = ground.mu;
  rep.psi = ground.u;

  const ConditionP cp = check_condition_p(p_dist, gamma, rep.c_omega);
  rep.cond_p_ok = cp.ok;
  rep.cond_p_margin = cp.margin;
  rep.cond_p_rhs = cp.rhs;
  rep.p_max = p_dist.max_value();

  const ConditionQ cq = check_condition_q(mesh, p_dist, q_dist, rep.psi, gamma);
  rep.cond_q_ok = cq.ok;
  rep.cond_q_lhs = cq.lhs;
  rep.cond_q_rhs = cq.rhs;

  rep.notes.push_back(constants::unit_reconstruction_note());
  if (cq.degenerate)
    rep.notes.push_back("condition on q is degenerate: the q class is empty (max q = 0)");
  if (!cp.ok)
    rep.notes.push_back("condition on p fails: max p >= sqrt(gamma C_Omega)/2");
  if (!cq.ok && !cq.degenerate)
    rep.notes.push_back("condition on q fails: lhs >= sqrt(max q)");
  return rep;
}

}  // namespace qdot
