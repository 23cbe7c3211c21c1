// SPDX-License-Identifier: Apache-2.0
#include "qdot/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "qdot/rearrange.hpp"

namespace qdot {

namespace {

Field center_weight_field(const Mesh& mesh) {
  Field w(mesh.cell_count());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = mesh.center_weight(i);
  return w;
}

struct StartFields {
  Field p, q;
};

StartFields make_start(const Mesh& mesh, const Distribution& p_dist,
                       const Distribution& q_dist, const StartSpec& start) {
  switch (start.policy) {
    case StartPolicy::adversarial: {
      // Mass where the ground mode will concentrate: worst reasonable start.
      const Field seed = center_weight_field(mesh);
      return {similar_rearrangement(mesh, p_dist, seed),
              similar_rearrangement(mesh, q_dist, seed)};
    }
    case StartPolicy::schwarz: {
      const Field seed = center_weight_field(mesh);
      return {opposite_rearrangement(mesh, p_dist, seed),
              opposite_rearrangement(mesh, q_dist, seed)};
    }
    case StartPolicy::random: {
      std::mt19937_64 rng(start.seed);
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      Field w(mesh.cell_count());
      for (double& x : w) x = unif(rng);
      return {opposite_rearrangement(mesh, p_dist, w),
              bathtub_min(mesh, q_dist, w)};
    }
    case StartPolicy::custom: {
      if (start.p0.size() != mesh.cell_count() || start.q0.size() != mesh.cell_count())
        throw std::invalid_argument("minimize_ground_state: custom start fields missing "
                                    "or sized wrong");
      return {start.p0, start.q0};
    }
  }
  throw std::invalid_argument("minimize_ground_state: unknown start policy");
}

std::uint64_t pair_signature(const Field& p, const Field& q) {
  // FNV-1a over the raw bytes of both fields.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const Field& f) {
    for (double v : f) {
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof(bits));
      for (int s = 0; s < 64; s += 8) {
        h ^= (bits >> s) & 0xffu;
        h *= 1099511628211ull;
      }
    }
  };
  mix(p);
  mix(q);
  return h;
}

double weighted_integral(const Mesh& mesh, const Field& f, const Field& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * w[i] * mesh.measure[i];
  return s;
}

struct UpdatePair {
  Field p, q;
};

UpdatePair raw_updates(const Mesh& mesh, const Distribution& p_dist,
                       const Distribution& q_dist, const Field& u) {
  Field w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] * u[i];
  UpdatePair out;
  out.q = bathtub_min(mesh, q_dist, w);
  out.p = opposite_rearrangement(mesh, p_dist, w);
  return out;
}

}  // namespace

OptimizationReport minimize_ground_state(const Mesh& mesh, const Distribution& p_dist,
                                         const Distribution& q_dist,
                                         const SolverOptions& opts, std::size_t max_iters,
                                         double tol, const StartSpec& start,
                                         const IterationObserver& observer) {
  if (!q_dist.two_level())
    throw std::invalid_argument("minimize_ground_state: q class must be characteristic");
  if (p_dist.min_value() < 0.0 || q_dist.min_value() < 0.0)
    throw std::invalid_argument("minimize_ground_state: classes must be non-negative");
  if (max_iters == 0)
    throw std::invalid_argument("minimize_ground_state: max_iters must be positive");

  OptimizationReport rep;
  StartFields cur = make_start(mesh, p_dist, q_dist, start);
  GroundState gs = solve_nonlinear(mesh, cur.p, cur.q, opts);
  rep.lambda_history.push_back(gs.lambda);
  if (observer) observer(0, gs, cur.p, cur.q);

  std::unordered_set<std::uint64_t> seen;
  seen.insert(pair_signature(cur.p, cur.q));

  double best_lambda = gs.lambda;
  Field best_p = cur.p, best_q = cur.q;
  GroundState best_gs = gs;

  Field w(mesh.cell_count());
  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    rep.iterations = iter;
    UpdatePair cand = raw_updates(mesh, p_dist, q_dist, gs.u);

    // Accept a candidate unless it strictly raises its weighted integral.
    // Uniform meshes always pass; non-uniform meshes can produce one-cell
    // regressions because the realized value multiset depends on the order.
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = gs.u[i] * gs.u[i];
    if (weighted_integral(mesh, cand.q, w) > weighted_integral(mesh, cur.q, w)) {
      cand.q = cur.q;
      ++rep.safeguard_rejections;
    }
    if (weighted_integral(mesh, cand.p, w) > weighted_integral(mesh, cur.p, w)) {
      cand.p = cur.p;
      ++rep.safeguard_rejections;
    }

    const double last_step = rep.lambda_history.size() < 2
                                 ? 0.0
                                 : std::abs(rep.lambda_history.back() -
                                            rep.lambda_history[rep.lambda_history.size() - 2]);
    if (cand.p == cur.p && cand.q == cur.q && last_step <= tol) {
      rep.converged = true;
      rep.fixed_point_gap = 0.0;
      break;
    }
    if (cand.p == cur.p && cand.q == cur.q) {
      // fields are fixed but lambda has not stagnated yet: re-solve once more
      GroundState resolved = solve_nonlinear(mesh, cur.p, cur.q, opts);
      rep.lambda_history.push_back(resolved.lambda);
      gs = std::move(resolved);
      continue;
    }

    const double gap =
        l1_distance(mesh, cand.p, cur.p) + l1_distance(mesh, cand.q, cur.q);
    GroundState next = solve_nonlinear(mesh, cand.p, cand.q, opts);
    if (observer) observer(iter, next, cand.p, cand.q);
    if (next.lambda > rep.lambda_history.back() + 1e-12) rep.monotone = false;
    rep.lambda_history.push_back(next.lambda);
    rep.fixed_point_gap = gap;
    cur.p = std::move(cand.p);
    cur.q = std::move(cand.q);
    gs = std::move(next);

    if (gs.lambda < best_lambda) {
      best_lambda = gs.lambda;
      best_p = cur.p;
      best_q = cur.q;
      best_gs = gs;
    }

    const std::uint64_t sig = pair_signature(cur.p, cur.q);
    if (!seen.insert(sig).second) {
      rep.cycled = true;
      rep.notes.push_back("iteration revisited a previous (p, q) pair; reporting the "
                          "best iterate");
      break;
    }
  }

  if (rep.cycled || !rep.converged) {
    rep.p_final = std::move(best_p);
    rep.q_final = std::move(best_q);
    rep.final_state = std::move(best_gs);
  } else {
    rep.p_final = std::move(cur.p);
    rep.q_final = std::move(cur.q);
    rep.final_state = std::move(gs);
  }
  rep.u_final = rep.final_state.u;

  if (mesh.is_disk()) {
    const Field sp = schwarz_increasing(mesh, p_dist);
    const Field sq = schwarz_increasing(mesh, q_dist);
    rep.schwarz_gap_p = l1_distance(mesh, rep.p_final, sp);
    rep.schwarz_gap_q = l1_distance(mesh, rep.q_final, sq);
    rep.schwarz_gap = std::max(*rep.schwarz_gap_p, *rep.schwarz_gap_q);
  }
  return rep;
}

DescentStep descent_step(const Mesh& mesh, const Distribution& p_dist,
                         const Distribution& q_dist, const GroundState& gs,
                         const SolverOptions& opts) {
  UpdatePair upd = raw_updates(mesh, p_dist, q_dist, gs.u);
  DescentStep out;
  out.next = solve_nonlinear(mesh, upd.p, upd.q, opts);
  out.p = std::move(upd.p);
  out.q = std::move(upd.q);
  return out;
}

FixedPointCertificate certify_fixed_point(const Mesh& mesh,
                                          const OptimizationReport& report,
                                          const Distribution& p_dist,
                                          const Distribution& q_dist) {
  if (report.u_final.size() != mesh.cell_count())
    throw std::invalid_argument("certify_fixed_point: report does not match mesh");
  const UpdatePair upd = raw_updates(mesh, p_dist, q_dist, report.u_final);

  FixedPointCertificate cert;
  cert.p_matches = true;
  cert.q_matches = true;
  for (std::size_t i = 0; i < mesh.cell_count(); ++i) {
    if (upd.p[i] != report.p_final[i]) {
      cert.p_matches = false;
      cert.p_offending.push_back(i);
    }
    if (upd.q[i] != report.q_final[i]) {
      cert.q_matches = false;
      cert.q_offending.push_back(i);
    }
  }
  if (mesh.is_disk()) {
    cert.schwarz_gap_p = l1_distance(mesh, report.p_final, schwarz_increasing(mesh, p_dist));
    cert.schwarz_gap_q = l1_distance(mesh, report.q_final, schwarz_increasing(mesh, q_dist));
  }
  return cert;
}

}  // namespace qdot
