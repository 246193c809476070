#include <benchmark/benchmark.h>

#include "stieltjes/extend.hpp"

using namespace stieltjes;

namespace {

void BM_DiscretizeAndExtract(benchmark::State& state) {
  const SemiCopula S = SemiCopula::upper_frechet(2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(extract_measure(discretize_semicopula(S, n)).total_mass());
}
BENCHMARK(BM_DiscretizeAndExtract)->Arg(64)->Arg(256);

void BM_SurvivalSweep(benchmark::State& state) {
  const GridMesh mesh = GridMesh::uniform(BoxDomain::unit_cube(2), static_cast<int>(state.range(0)));
  const SemiCopula S = SemiCopula::lower_frechet(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(lipschitz_survival_bound(S, mesh).max_ratio);
}
BENCHMARK(BM_SurvivalSweep)->Arg(64)->Arg(128);

void BM_ExtendedIntegral(benchmark::State& state) {
  TaggedFunction g(BoxDomain::unit_cube(2),
                   [](std::span<const double> u) { return u[0] * u[1]; },
                   ContinuityTag::LeftContinuous, true, 1.0);
  for (auto _ : state) {
    auto table = extended_integral(g, SemiCopula::upper_frechet(2), {8, 32, 128},
                                   ConvergenceOptions{.reference_cells = 256});
    benchmark::DoNotOptimize(table.limit);
  }
}
BENCHMARK(BM_ExtendedIntegral);

}  // namespace

BENCHMARK_MAIN();
