#include <benchmark/benchmark.h>

#include "msx/eigen.hpp"
#include "msx/regions.hpp"
#include "msx/scan.hpp"
#include "msx/witness.hpp"

namespace {

void BM_FamilyEigenvalues(benchmark::State& state) {
  const auto rho = msx::family_state({0.2, -0.1, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(msx::hermitian_eigenvalues(rho));
}
BENCHMARK(BM_FamilyEigenvalues);

void BM_PtMinEigenvalue(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(msx::pt_min_eigenvalue({0.2, -0.1, 0.3}));
}
BENCHMARK(BM_PtMinEigenvalue);

void BM_LambdaMin(benchmark::State& state) {
  const auto start = msx::lambda_tot_start();
  for (auto _ : state) benchmark::DoNotOptimize(msx::lambda_min(start));
}
BENCHMARK(BM_LambdaMin);

void BM_Classify(benchmark::State& state) {
  const auto& cl = msx::default_classifier();
  const auto p = msx::horodecki_point(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(cl.classify(p));
}
BENCHMARK(BM_Classify);

void BM_BoundaryPlaneScan(benchmark::State& state) {
  const auto grid = msx::parse_boundary_plane_grid("0:1:0.01,-1/3:0.1:0.01");
  const auto& cl = msx::default_classifier();
  for (auto _ : state) benchmark::DoNotOptimize(msx::scan(grid, cl, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_BoundaryPlaneScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
