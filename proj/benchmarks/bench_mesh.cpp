// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qdot/mesh.hpp"

using namespace qdot;

static void BM_laplacian_apply_radial(benchmark::State& state) {
  const Mesh mesh = build_disk_radial(2.4, state.range(0));
  Field u(mesh.cell_count(), 1.0), out;
  for (auto _ : state) {
    mesh.apply_laplacian(u, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_laplacian_apply_radial)->RangeMultiplier(4)->Range(256, 16384);

static void BM_laplacian_apply_polar(benchmark::State& state) {
  const Mesh mesh = build_disk_polar(2.4, state.range(0), state.range(0) / 2);
  Field u(mesh.cell_count(), 1.0), out;
  for (auto _ : state) {
    mesh.apply_laplacian(u, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_laplacian_apply_polar)->RangeMultiplier(2)->Range(32, 128);

static void BM_dirichlet_energy(benchmark::State& state) {
  const Mesh mesh = build_rectangle(1.0, 1.0, state.range(0), state.range(0));
  Field u(mesh.cell_count());
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = mesh.coord1[i] * (1.0 - mesh.coord1[i]);
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_energy(mesh, u));
}
BENCHMARK(BM_dirichlet_energy)->RangeMultiplier(2)->Range(32, 256);

BENCHMARK_MAIN();
