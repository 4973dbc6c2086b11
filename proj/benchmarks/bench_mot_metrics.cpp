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

#include "herdtrack/mot_metrics.hpp"
#include "herdtrack/sim_harness.hpp"

namespace {

void BM_EvaluateSequence(benchmark::State& state) {
  herdtrack::ScenarioConfig cfg;
  cfg.num_identities = static_cast<std::uint32_t>(state.range(0));
  cfg.num_frames = 500;
  cfg.arena_width = 4000;
  cfg.arena_height = 3000;
  cfg.embedding_model.dim = 64;
  for (std::uint32_t f = 50; f < cfg.num_frames; f += 50) {
    cfg.switch_plan.push_back({f, 1 + f % cfg.num_identities, 1 + (f + 1) % cfg.num_identities});
  }
  const auto scenario = herdtrack::generate(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        herdtrack::evaluate_sequence(scenario.ground_truth(), scenario.corrupted()));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(scenario.ground_truth().size()));
}
BENCHMARK(BM_EvaluateSequence)->Arg(8)->Arg(32)->Arg(63)->Unit(benchmark::kMillisecond);

}  // namespace
