#include <braidgrowth/bipartite_count.hpp>
#include <braidgrowth/growth_core.hpp>
#include <braidgrowth/partitions.hpp>

#include <benchmark/benchmark.h>

using namespace braidgrowth;

namespace {

// Every canonical count of one sum, from a cold cache.
void BM_CountTable(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const PartitionIndex index(m);
  for (auto _ : state) {
    CountCache cache;
    for (std::size_t i = 0; i < index.size(); ++i)
      for (std::size_t j = i; j < index.size(); ++j) benchmark::DoNotOptimize(count_graphs(index[i], index[j], cache));
  }
  state.counters["partitions"] = static_cast<double>(index.size());
}
BENCHMARK(BM_CountTable)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_RefinementTable(benchmark::State& state) {
  const PartitionIndex index(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(refinement_table(index));
}
BENCHMARK(BM_RefinementTable)->DenseRange(10, 20, 5)->Unit(benchmark::kMillisecond);

void BM_Core(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_core(n));
}
BENCHMARK(BM_Core)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

void BM_ReducedSystem(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CountCache cache;
    benchmark::DoNotOptimize(build_reduced_system(n, cache));
  }
}
BENCHMARK(BM_ReducedSystem)->DenseRange(8, 16, 4)->Unit(benchmark::kMillisecond);

// Streaming coefficients from a prebuilt system.
void BM_Coefficients(benchmark::State& state) {
  CountCache cache;
  const ReducedSystem system = build_reduced_system(static_cast<int>(state.range(0)), cache);
  const auto terms = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(growth_coefficients(system, terms));
}
BENCHMARK(BM_Coefficients)->Args({12, 50})->Args({16, 100})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
