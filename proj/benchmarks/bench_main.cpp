// Copyright 2026 The fftlb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "fftlb/bottleneck.hpp"
#include "fftlb/builders.hpp"
#include "fftlb/directions.hpp"
#include "fftlb/quantized.hpp"
#include "fftlb/quasi_entropy.hpp"

namespace fftlb {
namespace {

void BM_TraceIncremental(benchmark::State& state) {
  const auto a = build_wht(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trace_potential(a).values.back());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.gate_count()));
}
BENCHMARK(BM_TraceIncremental)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

// Full recomputation after every gate.
void BM_TraceFull(benchmark::State& state) {
  const auto a = build_wht(static_cast<std::size_t>(state.range(0)));
  TraceOptions options;
  options.resync_interval = 1;
  for (auto _ : state) benchmark::DoNotOptimize(trace_potential(a, {}, options).values.back());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(a.gate_count()));
}
BENCHMARK(BM_TraceFull)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_Scan(benchmark::State& state) {
  const auto a = build_wht(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(scan_bottlenecks(a).lhs);
}
BENCHMARK(BM_Scan)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const auto a = build_wht(static_cast<std::size_t>(state.range(0)));
  SimulationConfig config;
  config.samples = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(a, config).max_mean_bits());
  state.SetItemsProcessed(state.iterations() * 1000 * static_cast<std::int64_t>(a.gate_count()));
}
BENCHMARK(BM_Simulate)->RangeMultiplier(4)->Range(64, 1024)->Unit(benchmark::kMillisecond);

void BM_Extract(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = build_scaled_bottleneck_fixture(n, 4.0, n / 2);
  ExtractOptions options;
  options.tau = 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(extract_directions(a, options).overflow.size());
}
BENCHMARK(BM_Extract)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace fftlb

BENCHMARK_MAIN();
