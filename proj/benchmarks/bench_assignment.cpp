/* Copyright 2026 The herdtrack Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include "herdtrack/assignment.hpp"
#include "herdtrack/random.hpp"

namespace {

herdtrack::CostMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  herdtrack::CounterRng rng(seed);
  herdtrack::CostMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.set(r, c, rng.uniform());
  return m;
}

void BM_SolveMinCost(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(herdtrack::solve_min_cost(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveMinCost)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_BruteForce(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(herdtrack::brute_force_min_cost(m));
}
BENCHMARK(BM_BruteForce)->DenseRange(2, 6);

}  // namespace

BENCHMARK_MAIN();
