#include <benchmark/benchmark.h>

#include <vector>

#include "frontier/basis.hpp"
#include "frontier/boundary.hpp"
#include "frontier/estimator.hpp"
#include "frontier/harness.hpp"
#include "frontier/sampler.hpp"

using namespace frontier;

namespace {

CellExtremes make_extremes(int k) {
  const auto f = BoundaryFunction::sinusoid(1.0, 0.5, 1, 0.0);
  const PointSample s = sample_process(f, ProcessConfig(10000, 1.0, 1));
  return cell_extremes(s, Partition(k));
}

void BM_SampleProcess(benchmark::State& state) {
  const auto f = BoundaryFunction::sinusoid(1.0, 0.5, 1, 0.0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const PointSample s =
        sample_process(f, ProcessConfig(state.range(0), 1.0, seed++));
    benchmark::DoNotOptimize(s.points.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleProcess)->Arg(10000)->Arg(100000);

void BM_KernelRow(benchmark::State& state) {
  const BasisSpec spec(BasisFamily::trigonometric, 26);
  const int k = static_cast<int>(state.range(0));
  std::vector<double> row(k);
  for (auto _ : state) {
    kernel_row(spec, k, 0.37, row);
    benchmark::DoNotOptimize(row.data());
  }
  state.SetItemsProcessed(state.iterations() * k);
}
BENCHMARK(BM_KernelRow)->Arg(1086)->Arg(4096);

void BM_EstimateCurve(benchmark::State& state) {
  const CellExtremes ext = make_extremes(static_cast<int>(state.range(0)));
  const BasisSpec spec(BasisFamily::trigonometric, 26);
  const std::vector<double> grid = midpoint_grid(101);
  for (auto _ : state) {
    const EstimateCurve curve = estimate_curve(ext, spec, grid);
    benchmark::DoNotOptimize(curve.corrected.data());
  }
}
BENCHMARK(BM_EstimateCurve)->Arg(256)->Arg(1086);

void BM_CellExtremes(benchmark::State& state) {
  const auto f = BoundaryFunction::constant(1.0);
  const PointSample s = sample_process(f, ProcessConfig(100000, 1.0, 3));
  const Partition part(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const CellExtremes ext = cell_extremes(s, part);
    benchmark::DoNotOptimize(ext.x_max.data());
  }
  state.SetItemsProcessed(state.iterations() * s.points.size());
}
BENCHMARK(BM_CellExtremes)->Arg(100)->Arg(1000);

void BM_KernelBoundB2(benchmark::State& state) {
  const BasisSpec spec(BasisFamily::trigonometric, 26);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_bound(spec, k, 0.5, KernelNorm::l2));
  }
}
BENCHMARK(BM_KernelBoundB2)->Arg(1086)->Arg(5909);

}  // namespace

BENCHMARK_MAIN();
