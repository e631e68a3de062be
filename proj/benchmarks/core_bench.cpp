#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wsbdf2/harness.hpp"
#include "wsbdf2/integrator.hpp"
#include "wsbdf2/kernels.hpp"
#include "wsbdf2/mesh.hpp"
#include "wsbdf2/ratio_bounds.hpp"
#include "wsbdf2/spectral2d.hpp"

namespace {

void BM_BuildKernels(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const wsbdf2::Mesh mesh = wsbdf2::case1_mesh(1.0, N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsbdf2::build_kernels(mesh, 0.75));
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_BuildKernels)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_BuildDocRecursive(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const wsbdf2::Mesh mesh = wsbdf2::case1_mesh(1.0, N);
  const wsbdf2::KernelTable kernels = wsbdf2::build_kernels(mesh, 0.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsbdf2::build_doc_recursive(kernels));
  }
  state.SetComplexityN(N);
}
BENCHMARK(BM_BuildDocRecursive)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_PivotRecursion(benchmark::State& state) {
  const std::vector<double> ratios(static_cast<std::size_t>(state.range(0)),
                                   4.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsbdf2::lk_recursion(1.0, ratios));
  }
}
BENCHMARK(BM_PivotRecursion)->Range(1 << 10, 1 << 16);

void BM_RatioThreshold(benchmark::State& state) {
  double theta = 0.51;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wsbdf2::r_optimal(theta));
    theta += 0.001;
    if (theta > 1.0) theta = 0.51;
  }
}
BENCHMARK(BM_RatioThreshold);

void BM_SpectralShiftedSolve(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const wsbdf2::SpectralLaplacian2D problem(M, M);
  const Eigen::VectorXd rhs = problem.sample_interior([](double x, double y) {
    return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y);
  });
  for (auto _ : state) {
    benchmark::DoNotOptimize(problem.solve_shifted(10.0, 1.0, rhs));
  }
}
BENCHMARK(BM_SpectralShiftedSolve)->Arg(10)->Arg(20)->Arg(40);

void BM_HeatStep(benchmark::State& state) {
  const int M = static_cast<int>(state.range(0));
  const wsbdf2::SpectralLaplacian2D problem(M, M);
  const wsbdf2::Mesh mesh = wsbdf2::case1_mesh(1.0, 40);
  const Eigen::VectorXd u0 = wsbdf2::ManufacturedSolution::initial_state(problem);
  const wsbdf2::Forcing forcing = wsbdf2::ManufacturedSolution::forcing(problem);
  wsbdf2::SolveOptions options;
  options.keep_states = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        wsbdf2::wsbdf2_solve(problem, mesh, 0.75, u0, forcing, options));
  }
}
BENCHMARK(BM_HeatStep)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
