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

#include "herdtrack/distill_loss.hpp"
#include "herdtrack/random.hpp"

namespace {

herdtrack::FeatureTensor random_tensor(herdtrack::FeatureTensor::Dims dims,
                                       herdtrack::CounterRng& rng) {
  herdtrack::FeatureTensor t(dims);
  for (double& v : t.values()) v = rng.normal();
  return t;
}

void BM_ComputeLoss(benchmark::State& state) {
  herdtrack::CounterRng rng(3);
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto s = random_tensor({2, 64, side, side}, rng);
  const auto t = random_tensor({2, 64, side, side}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(herdtrack::compute_loss(s, t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_ComputeLoss)->Arg(16)->Arg(32)->Arg(64);

void BM_LossGradient(benchmark::State& state) {
  herdtrack::CounterRng rng(5);
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto s = random_tensor({2, 64, side, side}, rng);
  const auto t = random_tensor({2, 64, side, side}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(herdtrack::loss_gradient(s, t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_LossGradient)->Arg(16)->Arg(32)->Arg(64);

}  // namespace
