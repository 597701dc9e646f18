#include <benchmark/benchmark.h>

#include "g2flow/dynamics.hpp"
#include "g2flow/harness.hpp"

using namespace g2flow;

namespace {

Field bench_field(const GridPtr& grid) {
  return random_divfree_field(grid, 42, -2.0, grid->max_retained_wavenumber() / 2, 0.5);
}

void BM_transform_roundtrip_2d(benchmark::State& state) {
  GridPtr grid = make_grid(2, static_cast<int>(state.range(0)));
  TransformPlan plan(grid);
  Field f = bench_field(grid);
  for (auto _ : state) {
    PhysicalField phys = to_physical(f, plan);
    Field back = to_spectral(phys, plan);
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_transform_roundtrip_2d)->Arg(64)->Arg(128);

void BM_leray_project_3d(benchmark::State& state) {
  GridPtr grid = make_grid(3, static_cast<int>(state.range(0)));
  Field f = bench_field(grid);
  for (auto _ : state) {
    Field p = leray_project(f);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_leray_project_3d)->Arg(32);

void BM_step_velocity_form(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  GridPtr grid = make_grid(dim, dim == 2 ? 64 : 32);
  SolverParams p;
  p.alpha = 0.1;
  p.nu = 0.1;
  p.dt = 1e-3;
  Solver solver(grid, p);
  SimState s = solver.make_state(bench_field(grid));
  for (auto _ : state) {
    solver.step(s);
    benchmark::DoNotOptimize(s.v);
  }
}
BENCHMARK(BM_step_velocity_form)->Arg(2)->Arg(3);

void BM_step_curl_form_3d(benchmark::State& state) {
  GridPtr grid = make_grid(3, 32);
  SolverParams p;
  p.alpha = 0.1;
  p.nu = 0.1;
  p.dt = 1e-3;
  p.formulation = Formulation::curl;
  Solver solver(grid, p);
  SimState s = solver.make_state(bench_field(grid));
  for (auto _ : state) {
    solver.step(s);
    benchmark::DoNotOptimize(s.v);
  }
}
BENCHMARK(BM_step_curl_form_3d);

void BM_norm_report(benchmark::State& state) {
  GridPtr grid = make_grid(3, 32);
  TransformPlan plan(grid);
  Field f = bench_field(grid);
  for (auto _ : state) {
    NormReport r = compute_norms(f, plan);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_norm_report);

}  // namespace

BENCHMARK_MAIN();
