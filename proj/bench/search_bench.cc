// Copyright 2026 The winroute Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial against OpenMP branch and bound. Both settings return the same
// answer; only wall time differs.
#include <benchmark/benchmark.h>

#include "winroute/fairness_necklace.hpp"

namespace winroute {
namespace {

Parallelism Mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Parallelism::kSerial : Parallelism::kOpenMp;
}

void BM_MinimizeUnfairness(benchmark::State& state) {
  const auto star = NecklaceToStar(Necklace{2, {1, 2, 3, 1, 3, 2, 2, 3, 1, 1, 2, 3}});
  for (auto _ : state) {
    auto best = MinimizeUnfairness(star.instance, star.orders, star.params, 500'000'000, Mode(state));
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(BM_MinimizeUnfairness)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MinMaxDistinctSubsetSums(benchmark::State& state) {
  for (auto _ : state) {
    auto best = MinMaxDistinctSubsetSums(static_cast<int>(state.range(1)), 0, Mode(state));
    benchmark::DoNotOptimize(best);
  }
}
BENCHMARK(BM_MinMaxDistinctSubsetSums)
    ->Args({0, 6})
    ->Args({1, 6})
    ->Args({0, 7})
    ->Args({1, 7})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace winroute

BENCHMARK_MAIN();
