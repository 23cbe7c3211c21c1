// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the binary exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "helpers.hpp"
#include "json.hpp"
#include "oracles/bessel_oracle.hpp"
#include "oracles/companion.hpp"
#include "oracles/exhaustive.hpp"
#include "qdot/admissibility.hpp"
#include "qdot/io.hpp"
#include "qdot/optimize.hpp"
#include "qdot/rearrange.hpp"

using namespace qdot;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Harness {
  int failures = 0;

  void run(int number, const std::string& name,
           const std::function<std::pair<bool, std::string>()>& body) {
    bool ok = false;
    std::string detail;
    try {
      auto res = body();
      ok = res.first;
      detail = res.second;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

Distribution annulus_dist(const Mesh& mesh, double height, double inner) {
  const double area = kPi * (mesh.radius * mesh.radius - inner * inner);
  return Distribution({{height, area}, {0.0, mesh.domain_area() - area}});
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// --- criterion 1 -----------------------------------------------------------

std::pair<bool, std::string> reference_reproduction() {
  const fs::path out = fs::temp_directory_path() / "qdot_acceptance_repro";
  fs::create_directories(out);
  cli::ReproduceArgs args;
  args.out_dir = out.string();
  args.resolution = 2048;

  const auto t0 = std::chrono::steady_clock::now();
  const int rc = cli::cmd_reproduce_paper(args);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ifstream in(out / "reproduce.json");
  const auto j = nlohmann::json::parse(in);
  const double lam2 = j["lambda_squared"].get<double>();
  const double lam2_fine = j["lambda_squared_fine"].get<double>();
  const double drift = std::abs(lam2 - lam2_fine) / lam2;

  const bool ok = rc == 0 && std::abs(lam2 - 0.45) <= 0.045 && drift < 2e-3 &&
                  elapsed <= 10.0;
  return {ok, fmt("lambda^2=%.4f in [0.405,0.495], drift=%.2e, %.2fs <= 10s", lam2, drift,
                  elapsed)};
}

// --- criterion 2 -----------------------------------------------------------

std::pair<bool, std::string> analytic_eigenvalues() {
  const double j01 = qdot::test::bessel_j0_first_zero();
  bool ok = true;
  std::ostringstream detail;

  {
    SolverOptions opts;
    opts.gamma = 0.4441;
    const Mesh disk = build_disk_radial(2.4, 1024);
    const Field zero(disk.cell_count(), 0.0);
    const GroundState gs = solve_nonlinear(disk, zero, zero, opts);
    const double expected = opts.gamma * std::pow(j01 / 2.4, 2);
    const double err = std::abs(gs.lambda * gs.lambda - expected) / expected;
    ok = ok && err < 5e-3;
    detail << fmt("disk err=%.1e", err);
  }
  {
    SolverOptions opts;
    opts.gamma = 1.0;
    for (const auto& [a, b] : {std::pair{kPi, kPi}, std::pair{1.0, 2.0}}) {
      const Mesh rect = build_rectangle(a, b, 256, 256);
      const Field zero(rect.cell_count(), 0.0);
      const GroundState gs = solve_nonlinear(rect, zero, zero, opts);
      const double expected = kPi * kPi * (1.0 / (a * a) + 1.0 / (b * b));
      const double err = std::abs(gs.lambda * gs.lambda - expected) / expected;
      ok = ok && err < 5e-3;
      detail << fmt(", rect err=%.1e", err);
    }
  }
  {
    SolverOptions opts;
    opts.gamma = 0.5;
    opts.root_tol = 1e-12;
    const Mesh rect = build_rectangle(kPi, kPi, 64, 64);
    const double mu1 =
        linear_ground_state(rect, Field(rect.cell_count(), 0.0), opts.gamma, 1e-13).mu;
    const GroundState gs = solve_nonlinear(rect, Field(rect.cell_count(), 0.5),
                                           Field(rect.cell_count(), 2.0), opts);
    const double closed = 0.5 + std::sqrt(0.25 + 2.0 + mu1);
    const double err = std::abs(gs.lambda - closed);
    ok = ok && err < 1e-6;
    detail << fmt(", const-potential err=%.1e", err);
  }
  return {ok, detail.str()};
}

// --- criterion 3 -----------------------------------------------------------

std::pair<bool, std::string> linearization_oracle() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SolverOptions opts;
  opts.root_tol = 1e-12;
  double worst = 0.0;
  int count = 0;
  for (int rep = 0; rep < 30; ++rep) {
    Mesh mesh;
    switch (rep % 3) {
      case 0: mesh = build_disk_radial(0.8 + unif(rng), 16 + (rep % 5) * 24); break;
      case 1: mesh = qdot::test::strip_mesh(10 + (rep % 7) * 12, 0.25); break;
      default: mesh = build_disk_polar(1.0 + unif(rng), 8, 8 + 2 * (rep % 3)); break;
    }
    opts.gamma = 0.3 + 0.5 * unif(rng);
    const Field p = qdot::test::random_field(mesh, rng, 0.0, 0.25);
    const Field q = qdot::test::random_field(mesh, rng, 0.0, 2.0);
    const GroundState gs = solve_nonlinear(mesh, p, q, opts);
    const double oracle = qdot::test::companion_ground_lambda(mesh, p, q, opts.gamma);
    worst = std::max(worst, std::abs(gs.lambda - oracle) / oracle);
    ++count;
  }
  return {count == 30 && worst <= 1e-8, fmt("30 instances, worst rel err=%.2e", worst)};
}

// --- criterion 4 -----------------------------------------------------------

std::pair<bool, std::string> rearrangement_extremality() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Mesh mesh = qdot::test::strip_mesh(8);
  bool ok = true;
  for (int rep = 0; rep < 100; ++rep) {
    Field w(8), f(8);
    for (double& x : w) x = unif(rng);
    for (double& x : f) x = unif(rng);
    const Distribution dist = distribution_of(mesh, f);

    const auto ex = qdot::test::permutation_extrema(mesh, f, w);
    ok = ok && opposite_rearrangement(mesh, dist, w) == ex.argmin;
    ok = ok && similar_rearrangement(mesh, dist, w) == ex.argmax;

    const std::size_t k = 1 + static_cast<std::size_t>(unif(rng) * 6.99);
    const double beta = 0.5 + unif(rng);
    const Distribution two(
        {{beta, static_cast<double>(k)}, {0.0, static_cast<double>(8 - k)}});
    const auto sup = qdot::test::support_extrema(mesh, w, beta, k);
    Field lo_expect(8, 0.0), hi_expect(8, 0.0);
    for (std::size_t i : sup.argmin) lo_expect[i] = beta;
    for (std::size_t i : sup.argmax) hi_expect[i] = beta;
    ok = ok && bathtub_min(mesh, two, w) == lo_expect;
    ok = ok && bathtub_max(mesh, two, w) == hi_expect;
    if (!ok) return {false, fmt("mismatch at suite index %g", double(rep))};
  }
  return {ok, "100 weight vectors, exact matches for opposite/similar/bathtub"};
}

// --- criterion 5 -----------------------------------------------------------

std::pair<bool, std::string> monotone_descent() {
  std::mt19937_64 rng(303);
  SolverOptions opts;
  opts.gamma = 0.4441;
  const Mesh meshes[] = {build_disk_radial(2.4, 48), build_disk_polar(2.0, 12, 8),
                         build_rectangle(2.0, 1.4, 10, 8)};
  int total = 0;
  for (const Mesh& mesh : meshes) {
    int produced = 0;
    for (int attempt = 0; attempt < 120 && produced < 20; ++attempt) {
      auto inst = qdot::test::random_admissible_instance(mesh, opts.gamma, rng);
      if (!inst) continue;
      ++produced;
      ++total;
      StartSpec start;
      start.policy = StartPolicy::random;
      start.seed = 4000 + attempt;
      const OptimizationReport rep = minimize_ground_state(mesh, inst->p_dist,
                                                           inst->q_dist, opts, 80, 1e-10,
                                                           start);
      for (std::size_t k = 1; k < rep.lambda_history.size(); ++k)
        if (rep.lambda_history[k] > rep.lambda_history[k - 1] + 1e-12)
          return {false, fmt("ascent of %.2e at step %g",
                             rep.lambda_history[k] - rep.lambda_history[k - 1], double(k))};
      if (!rep.converged) return {false, "an instance failed to converge"};

      StartSpec again;
      again.policy = StartPolicy::custom;
      again.p0 = rep.p_final;
      again.q0 = rep.q_final;
      const OptimizationReport rerun = minimize_ground_state(mesh, inst->p_dist,
                                                             inst->q_dist, opts, 80,
                                                             1e-10, again);
      if (!(rerun.converged && rerun.iterations == 1 && rerun.p_final == rep.p_final &&
            rerun.q_final == rep.q_final))
        return {false, "rerun from the converged pair took more than one iteration"};
    }
    if (produced < 20) return {false, "could not generate 20 admissible instances"};
  }
  return {true, fmt("%g instances: non-increasing histories, reruns converge in 1",
                    double(total))};
}

// --- criterion 6 -----------------------------------------------------------

std::pair<bool, std::string> schwarz_certificate() {
  SolverOptions opts;
  opts.gamma = 0.4441;
  std::ostringstream detail;
  bool ok = true;

  {
    const Mesh mesh = build_disk_radial(2.4, 512);
    const Distribution p_dist = annulus_dist(mesh, 0.27, 2.26);
    const Distribution q_dist = annulus_dist(mesh, 2.13, 2.13);
    const OptimizationReport rep =
        minimize_ground_state(mesh, p_dist, q_dist, opts, 100, 1e-10);
    ok = ok && rep.converged;
    const double cell = mesh.max_cell_measure();
    ok = ok && *rep.schwarz_gap_p <= 2.0 * cell * 0.27;
    ok = ok && *rep.schwarz_gap_q <= 2.0 * cell * 2.13;
    detail << fmt("radial gaps p=%.2e q=%.2e", *rep.schwarz_gap_p, *rep.schwarz_gap_q);
  }
  {
    const Mesh mesh = build_disk_polar(2.4, 40, 16);
    const Field q0 = make_annular_characteristic(mesh, 2.13, 2.13, 2.4);
    const Field p0 = make_annular_characteristic(mesh, 0.27, 2.26, 2.4);
    const OptimizationReport rep =
        minimize_ground_state(mesh, distribution_of(mesh, p0), distribution_of(mesh, q0),
                              opts, 100, 1e-10);
    ok = ok && rep.converged;
    double worst = 0.0;
    for (const Field* f : {&rep.p_final, &rep.q_final, &rep.u_final}) {
      double scale = 0.0;
      for (double v : *f) scale = std::max(scale, std::abs(v));
      for (std::size_t i = 0; i < mesh.n1; ++i) {
        double lo = (*f)[i * mesh.n2], hi = lo;
        for (std::size_t j = 1; j < mesh.n2; ++j) {
          lo = std::min(lo, (*f)[i * mesh.n2 + j]);
          hi = std::max(hi, (*f)[i * mesh.n2 + j]);
        }
        if (scale > 0.0) worst = std::max(worst, (hi - lo) / scale);
      }
    }
    ok = ok && worst <= 1e-6;
    detail << fmt(", polar angular variation=%.1e", worst);
  }
  return {ok, detail.str()};
}

// --- criterion 7 -----------------------------------------------------------

std::pair<bool, std::string> property_suites() {
  std::mt19937_64 rng(404);
  std::ostringstream detail;

  // Hardy-Littlewood with one-cell slack, 100 random radial pairs
  {
    const Mesh mesh = build_disk_radial(1.0, 256);
    for (int rep = 0; rep < 100; ++rep) {
      const Field f = qdot::test::gaussian_bumps(mesh, rng, 3);
      const Field g = qdot::test::gaussian_bumps(mesh, rng, 3);
      double fmax = 0.0, gmax = 0.0;
      for (double v : f) fmax = std::max(fmax, v);
      for (double v : g) gmax = std::max(gmax, v);
      const double slack = mesh.max_cell_measure() * fmax * gmax;
      const Field fd = schwarz_decreasing(mesh, distribution_of(mesh, f));
      const Field gd = schwarz_decreasing(mesh, distribution_of(mesh, g));
      const Field gi = schwarz_increasing(mesh, distribution_of(mesh, g));
      double low = 0.0, mid = 0.0, high = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) {
        low += fd[i] * gi[i] * mesh.measure[i];
        mid += f[i] * g[i] * mesh.measure[i];
        high += fd[i] * gd[i] * mesh.measure[i];
      }
      if (!(low <= mid + slack && mid <= high + slack))
        return {false, "hardy-littlewood chain violated"};
    }
    detail << "HL(100) ok";
  }
  // Polya-Szego with resolution-scaled tolerance, 50 smooth fields
  {
    const std::size_t n = 192;
    const Mesh mesh = build_disk_radial(1.0, n);
    for (int rep = 0; rep < 50; ++rep) {
      const Field u = qdot::test::gaussian_bumps(mesh, rng, 3);
      const Field us = schwarz_decreasing(mesh, distribution_of(mesh, u));
      if (!(dirichlet_energy(mesh, us) <=
            dirichlet_energy(mesh, u) * (1.0 + 5.0 / static_cast<double>(n))))
        return {false, "polya-szego violated"};
    }
    detail << ", PS(50) ok";
  }
  // every rearrangement operation preserves the distribution
  {
    const Mesh disk = build_disk_radial(1.5, 96);
    const Mesh rect = build_rectangle(1.0, 1.0, 8, 8);
    for (int rep = 0; rep < 20; ++rep) {
      const Field f = qdot::test::gaussian_bumps(disk, rng, 2);
      const Distribution d = distribution_of(disk, f);
      const Field w = qdot::test::random_field(disk, rng);
      for (const Field& out :
           {opposite_rearrangement(disk, d, w), similar_rearrangement(disk, d, w),
            schwarz_increasing(disk, d), schwarz_decreasing(disk, d)})
        if (!is_rearrangement(disk, f, out, 1e-12))
          return {false, "a rearrangement output left the class"};

      const Field rf = qdot::test::random_field(rect, rng);
      const Distribution rd = distribution_of(rect, rf);
      const Field rw = qdot::test::random_field(rect, rng);
      for (const Field& out :
           {opposite_rearrangement(rect, rd, rw), similar_rearrangement(rect, rd, rw)})
        if (!is_rearrangement(rect, rf, out, 1e-12))
          return {false, "a rearrangement output left the class (rectangle)"};

      const double beta = 1.0 + rng() % 3;
      const Distribution two({{beta, 2.0 * disk.max_cell_measure()},
                              {0.0, disk.domain_area() - 2.0 * disk.max_cell_measure()}});
      Field gen(disk.cell_count(), 0.0);
      {
        const Field bw = qdot::test::random_field(disk, rng);
        gen = bathtub_min(disk, two, bw);
      }
      for (const Field& out :
           {bathtub_min(disk, two, w), bathtub_max(disk, two, w)})
        if (!is_rearrangement(disk, gen, out, 1e-12))
          return {false, "a bathtub output left the class"};
    }
    detail << ", class preservation ok";
  }
  // lambda bounds on admissible instances
  {
    SolverOptions opts;
    opts.gamma = 0.4441;
    const Mesh meshes[] = {build_disk_radial(2.4, 128), build_rectangle(2.2, 1.6, 12, 10),
                           build_disk_polar(2.0, 12, 8)};
    int produced = 0;
    for (const Mesh& mesh : meshes) {
      const double c_omega = poincare_constant(mesh, 1e-12);
      for (int rep = 0; rep < 10 && produced < 12; ++rep) {
        auto inst = qdot::test::random_admissible_instance(mesh, opts.gamma, rng);
        if (!inst) continue;
        ++produced;
        const GroundState gs = solve_nonlinear(mesh, inst->p0, inst->q0, opts);
        if (!(gs.lambda > std::sqrt(opts.gamma * c_omega)))
          return {false, "lambda fell below sqrt(gamma C_Omega)"};
        if (!(gs.lambda <= inst->cond_q_lhs + 1e-8))
          return {false, "lambda exceeded the condition-Q lhs"};
      }
    }
    if (produced < 9) return {false, "too few admissible instances"};
    detail << fmt(", lambda bounds ok on %g instances", double(produced));
  }
  // Hellmann-Feynman derivative vs finite differences
  {
    const Mesh mesh = build_disk_radial(2.4, 256);
    const double gamma = 0.4441;
    const Field p = make_annular_characteristic(mesh, 0.27, 1.5, 2.4);
    const Field q = make_annular_characteristic(mesh, 2.13, 2.13, 2.4);
    Field V(mesh.cell_count());
    auto mu_of = [&](double l) {
      for (std::size_t i = 0; i < V.size(); ++i) V[i] = q[i] + 2.0 * l * p[i];
      return linear_ground_state(mesh, V, gamma, 1e-13);
    };
    const double lam = 0.6, h = 1e-5;
    const LinearGroundState at = mu_of(lam);
    double analytic = 0.0;
    for (std::size_t i = 0; i < V.size(); ++i)
      analytic += 2.0 * p[i] * at.u[i] * at.u[i] * mesh.measure[i];
    const double fd = (mu_of(lam + h).mu - mu_of(lam - h).mu) / (2.0 * h);
    if (!(std::abs(fd - analytic) <= 1e-4 * std::abs(analytic)))
      return {false, fmt("hellmann-feynman rel err %.2e", std::abs(fd - analytic) /
                                                              std::abs(analytic))};
    detail << ", HF ok";
  }
  return {true, detail.str()};
}

// --- criterion 8 -----------------------------------------------------------

std::pair<bool, std::string> confinement() {
  SolverOptions opts;
  opts.gamma = 0.4441;
  const Mesh mesh = build_disk_radial(2.4, 2048);
  const Distribution p_dist = annulus_dist(mesh, 0.27, 2.26);
  const Distribution q_dist = annulus_dist(mesh, 2.13, 2.13);
  const OptimizationReport rep =
      minimize_ground_state(mesh, p_dist, q_dist, opts, 100, 1e-10);
  if (!rep.converged) return {false, "reference problem did not converge"};

  const ConfinementMask conf =
      confinement_mask(mesh, rep.p_final, rep.q_final, rep.final_state);
  const double lam2 = rep.lambda() * rep.lambda();
  for (std::size_t i = 0; i < conf.mask.size(); ++i) {
    const bool free_region = rep.q_final[i] == 0.0 && rep.p_final[i] == 0.0;
    if (free_region && conf.mask[i] != 1.0)
      return {false, "V >= lambda^2 inside the inner disk"};
    if (rep.q_final[i] > 0.0) {
      if (conf.mask[i] != 0.0) return {false, "V < lambda^2 on the q-support annulus"};
      if (!(rep.q_final[i] + 2.0 * rep.lambda() * rep.p_final[i] >= lam2))
        return {false, "potential fell below lambda^2 on the annulus"};
    }
  }
  return {true, fmt("V < lambda^2 exactly on r <= 2.13 (lambda^2 = %.4f < 2.13)", lam2)};
}

}  // namespace

int main() {
  Harness h;
  h.run(1, "reference example reproduction", reference_reproduction);
  h.run(2, "analytic eigenvalue checks", analytic_eigenvalues);
  h.run(3, "dense linearization oracle", linearization_oracle);
  h.run(4, "rearrangement extremality oracles", rearrangement_extremality);
  h.run(5, "monotone descent and fixed-point reruns", monotone_descent);
  h.run(6, "schwarz certificate on disks", schwarz_certificate);
  h.run(7, "property suites", property_suites);
  h.run(8, "energy confinement", confinement);
  if (h.failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", h.failures);
  return 1;
}
