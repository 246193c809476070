#include <benchmark/benchmark.h>

#include "stieltjes/variation.hpp"

using namespace stieltjes;

namespace {

GridField w2_field(int n) {
  return GridField::sample(SemiCopula::lower_frechet(2).as_function(),
                           GridMesh::uniform(BoxDomain::unit_cube(2), n));
}

void BM_VitaliFullSet(benchmark::State& state) {
  const GridField f = w2_field(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(vitali_variation(f, SubsetIndex::full(2)));
}
BENCHMARK(BM_VitaliFullSet)->Arg(64)->Arg(128)->Arg(256);

void BM_HkVariation(benchmark::State& state) {
  const GridField f = w2_field(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hk_variation(f).hk_total);
}
BENCHMARK(BM_HkVariation)->Arg(64)->Arg(128);

void BM_ExtractMeasure(benchmark::State& state) {
  const GridField f = w2_field(static_cast<int>(state.range(0)));
  const GridField right(f.mesh(), f.values(), ContinuityTag::RightContinuous);
  for (auto _ : state) benchmark::DoNotOptimize(extract_measure(right).total_variation());
}
BENCHMARK(BM_ExtractMeasure)->Arg(64)->Arg(128);

}  // namespace
