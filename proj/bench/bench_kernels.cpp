// Serial reference kernels against their OpenMP counterparts.
//
//   ./bench_kernels --benchmark_filter=Spin1
//   OMP_NUM_THREADS=8 ./bench_kernels

#include <benchmark/benchmark.h>

#include "wvu/harness.hpp"
#include "wvu/models.hpp"

namespace {

void BM_Spin1SweepSerial(benchmark::State& state) {
  const auto res = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wvu::sweep_spin1_serial(res, 0.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(res * res));
}

void BM_Spin1SweepParallel(benchmark::State& state) {
  const auto res = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wvu::sweep_spin1(res, 0.0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(res * res));
}

void BM_Spin32SweepSerial(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wvu::sweep_spin32_serial(-3.0, 3.0, steps));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Spin32SweepParallel(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wvu::sweep_spin32(-3.0, 3.0, steps));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

wvu::HarnessConfig harness_config(std::size_t samples) {
  wvu::HarnessConfig config;
  config.dims = {3, 4, 5, 6};
  config.samples_per_dim = samples;
  config.modes = {wvu::DegeneracyMode::None, wvu::DegeneracyMode::DegenerateB,
                  wvu::DegeneracyMode::OrthogonalPsi};
  return config;
}

void BM_HarnessSerial(benchmark::State& state) {
  const auto config = harness_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wvu::run_harness_serial(config));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 12);
}

void BM_HarnessParallel(benchmark::State& state) {
  const auto config = harness_config(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(wvu::run_harness(config));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 12);
}

}  // namespace

BENCHMARK(BM_Spin1SweepSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spin1SweepParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spin32SweepSerial)->Arg(601)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Spin32SweepParallel)->Arg(601)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HarnessSerial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HarnessParallel)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
