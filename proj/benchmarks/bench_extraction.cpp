#include <benchmark/benchmark.h>

#include <map>

#include "movelets/baseline.hpp"
#include "movelets/distance.hpp"
#include "movelets/extraction.hpp"
#include "movelets/pipeline.hpp"
#include "movelets/synthetic.hpp"

namespace {

using namespace movelets;

// 3 dimensions: poi plus one spatial and one numeric noise column.
const Dataset& planted(std::size_t per_class) {
  static std::map<std::size_t, Dataset> cache;
  auto it = cache.find(per_class);
  if (it == cache.end()) {
    it = cache.emplace(per_class, generate_planted_dataset(5, per_class, 20, 4, 20, 77, {1, 1})).first;
  }
  return it->second;
}

void BM_Exhaustive(benchmark::State& state) {
  const auto& ds = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_exhaustive(ds, {}).movelets.size());
  state.counters["trajectories"] = static_cast<double>(ds.size());
}

void BM_Hiper(benchmark::State& state) {
  const auto& ds = planted(static_cast<std::size_t>(state.range(0)));
  RunConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(run(ds, cfg).movelets.size());
}

void BM_HiperPivots(benchmark::State& state) {
  const auto& ds = planted(static_cast<std::size_t>(state.range(0)));
  RunConfig cfg;
  cfg.extraction.variant = ExtractionVariant::pivots;
  for (auto _ : state) benchmark::DoNotOptimize(run(ds, cfg).movelets.size());
}

void BM_ExtractNoPivots(benchmark::State& state) {
  const auto& ds = planted(20);
  const auto stats = compute_stats(ds);
  ExtractionConfig cfg;
  cfg.log_limit = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_no_pivots(ds, 0, ds.members_of(0), stats, cfg).best_candidates.size());
  }
}

void BM_ExtractPivots(benchmark::State& state) {
  const auto& ds = planted(20);
  const auto stats = compute_stats(ds);
  ExtractionConfig cfg;
  cfg.variant = ExtractionVariant::pivots;
  cfg.log_limit = state.range(0) != 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_pivots(ds, 0, ds.members_of(0), stats, cfg).best_candidates.size());
  }
}

void BM_BestAlignment(benchmark::State& state) {
  const auto& ds = planted(20);
  const auto stats = compute_stats(ds);
  const Subtrajectory slice{0, static_cast<std::size_t>(state.range(0))};
  const auto dims = DimensionSet::all(ds.dimension_count());
  std::size_t target = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        best_alignment(ds.trajectory(0), slice, ds.trajectory(target), ds.dimensions(), dims, stats));
    target = target % (ds.size() - 1) + 1;
  }
}

}  // namespace

BENCHMARK(BM_Exhaustive)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Hiper)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HiperPivots)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractNoPivots)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ExtractPivots)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BestAlignment)->Arg(1)->Arg(4)->Arg(10);
BENCHMARK_MAIN();
