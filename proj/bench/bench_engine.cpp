// Copyright 2026 The Authors.
//
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

// Serial reference vs OpenMP trial loop on the reference scenario.

#include <benchmark/benchmark.h>

#include "relaysec/engine.hpp"

namespace {

relaysec::SystemConfig bench_config(relaysec::PolicyId policy) {
  relaysec::SystemConfig cfg;
  cfg.policy = policy;
  cfg.trials = 16;
  cfg.slots = 50;
  return cfg;
}

void BM_Serial(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<relaysec::PolicyId>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(relaysec::run_monte_carlo_serial(cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials * cfg.slots);
}

void BM_Parallel(benchmark::State& state) {
  const auto cfg = bench_config(static_cast<relaysec::PolicyId>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(relaysec::run_monte_carlo(cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials * cfg.slots);
}

constexpr auto kExhaustive = static_cast<int>(relaysec::PolicyId::kSrExhaustive);
constexpr auto kGreedy = static_cast<int>(relaysec::PolicyId::kGreedy);

}  // namespace

BENCHMARK(BM_Serial)->Arg(kExhaustive)->Arg(kGreedy)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(kExhaustive)->Arg(kGreedy)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
