// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qdot/field.hpp"
#include "qdot/nlep.hpp"

using namespace qdot;

static void BM_linear_ground_state_radial(benchmark::State& state) {
  const Mesh mesh = build_disk_radial(2.4, state.range(0));
  const Field q = make_annular_characteristic(mesh, 2.13, 2.13, 2.4);
  for (auto _ : state)
    benchmark::DoNotOptimize(linear_ground_state(mesh, q, 0.4441, 1e-12).mu);
}
BENCHMARK(BM_linear_ground_state_radial)->RangeMultiplier(4)->Range(512, 8192);

static void BM_solve_nonlinear_paper(benchmark::State& state) {
  const Mesh mesh = build_disk_radial(2.4, state.range(0));
  SolverOptions opts;
  opts.gamma = 0.4441;
  const Field p = make_annular_characteristic(mesh, 0.27, 2.26, 2.4);
  const Field q = make_annular_characteristic(mesh, 2.13, 2.13, 2.4);
  for (auto _ : state) benchmark::DoNotOptimize(solve_nonlinear(mesh, p, q, opts).lambda);
}
BENCHMARK(BM_solve_nonlinear_paper)->RangeMultiplier(2)->Range(512, 4096);

static void BM_solve_nonlinear_polar(benchmark::State& state) {
  const Mesh mesh = build_disk_polar(2.4, state.range(0), state.range(0) / 2);
  SolverOptions opts;
  opts.gamma = 0.4441;
  const Field p = make_annular_characteristic(mesh, 0.27, 2.26, 2.4);
  const Field q = make_annular_characteristic(mesh, 2.13, 2.13, 2.4);
  for (auto _ : state) benchmark::DoNotOptimize(solve_nonlinear(mesh, p, q, opts).lambda);
}
BENCHMARK(BM_solve_nonlinear_polar)->RangeMultiplier(2)->Range(16, 64);
