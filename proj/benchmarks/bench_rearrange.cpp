// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <random>

#include "qdot/optimize.hpp"
#include "qdot/rearrange.hpp"

using namespace qdot;

static void BM_opposite_rearrangement(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Mesh mesh = build_disk_radial(2.4, state.range(0));
  Field f(mesh.cell_count()), w(mesh.cell_count());
  for (double& v : f) v = unif(rng);
  for (double& v : w) v = unif(rng);
  const Distribution dist = distribution_of(mesh, f);
  for (auto _ : state) benchmark::DoNotOptimize(opposite_rearrangement(mesh, dist, w));
}
BENCHMARK(BM_opposite_rearrangement)->RangeMultiplier(4)->Range(1024, 65536);

static void BM_minimize_paper_disk(benchmark::State& state) {
  const Mesh mesh = build_disk_radial(2.4, state.range(0));
  SolverOptions opts;
  opts.gamma = 0.4441;
  const double area = mesh.domain_area();
  const double q_area = 3.1415926535897931 * (2.4 * 2.4 - 2.13 * 2.13);
  const double p_area = 3.1415926535897931 * (2.4 * 2.4 - 2.26 * 2.26);
  const Distribution q_dist({{2.13, q_area}, {0.0, area - q_area}});
  const Distribution p_dist({{0.27, p_area}, {0.0, area - p_area}});
  for (auto _ : state)
    benchmark::DoNotOptimize(
        minimize_ground_state(mesh, p_dist, q_dist, opts, 100, 1e-10).lambda());
}
BENCHMARK(BM_minimize_paper_disk)->RangeMultiplier(2)->Range(512, 2048);
