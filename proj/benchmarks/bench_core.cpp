#include <benchmark/benchmark.h>

#include "bhbent/autgroup.hpp"
#include "bhbent/bent_search.hpp"
#include "bhbent/butson.hpp"
#include "bhbent/existence.hpp"
#include "bhbent/metrics.hpp"

using namespace bhbent;

static void BM_VerifyFourier(benchmark::State& state) {
  const auto h = fourier_matrix(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_butson(h));
}
BENCHMARK(BM_VerifyFourier)->Arg(3)->Arg(5)->Arg(8);

static void BM_ExhaustiveSearch(benchmark::State& state) {
  const auto f3 = fourier_matrix(3, 1);
  const auto h = kronecker(f3, f3);
  SearchOptions opt;
  opt.parallelism.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search(h, 2, opt));
}
BENCHMARK(BM_ExhaustiveSearch)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EigenspaceSearch(benchmark::State& state) {
  const auto f3 = fourier_matrix(3, 1);
  const auto h = kronecker(f3, f3);
  for (auto _ : state) benchmark::DoNotOptimize(eigenspace_search(h, 2));
}
BENCHMARK(BM_EigenspaceSearch)->Unit(benchmark::kMillisecond);

static void BM_EigenspaceSearchF8(benchmark::State& state) {
  const auto h = fourier_matrix(8, 1);
  for (auto _ : state) benchmark::DoNotOptimize(eigenspace_search(h, 1));
}
BENCHMARK(BM_EigenspaceSearchF8)->Unit(benchmark::kMillisecond);

static void BM_CoveringRadius(benchmark::State& state) {
  const auto code = build_code(fourier_matrix(static_cast<int>(state.range(0)), 1), true);
  for (auto _ : state) benchmark::DoNotOptimize(covering_radius(code));
}
BENCHMARK(BM_CoveringRadius)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_CompositionSieve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exclusion_report(n, 6));
}
BENCHMARK(BM_CompositionSieve)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

static void BM_DigraphAutomorphisms(benchmark::State& state) {
  const auto g = build_digraph(fourier_matrix(static_cast<int>(state.range(0)), 1));
  for (auto _ : state) benchmark::DoNotOptimize(digraph_automorphisms(g));
}
BENCHMARK(BM_DigraphAutomorphisms)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
