/* Copyright 2026 The rankfuzz Authors.

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

// Serial reference runner against the OpenMP runner on the experiment
// kernels. Both produce identical tallies; only wall time differs.

#include <benchmark/benchmark.h>

#include "rankfuzz/analysis.hpp"
#include "rankfuzz/trials.hpp"

namespace {

using rankfuzz::Exec;

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial"
                                     : "openmp x" + std::to_string(rankfuzz::trial_threads()));
}

void BM_Lemma2(benchmark::State& state) {
  for (auto _ : state) {
    auto r = rankfuzz::mc_lemma2(2, 8, 8, 4000, 1, exec_of(state));
    benchmark::DoNotOptimize(r.successes);
  }
  state.SetItemsProcessed(state.iterations() * 4000);
  label(state);
}

void BM_Prop2(benchmark::State& state) {
  for (auto _ : state) {
    auto r = rankfuzz::mc_prop_delta(2, 8, 2, 2, 1, 200, 1, exec_of(state));
    benchmark::DoNotOptimize(r.successes);
  }
  state.SetItemsProcessed(state.iterations() * 200);
  label(state);
}

void BM_Prop4(benchmark::State& state) {
  for (auto _ : state) {
    auto r = rankfuzz::mc_prop_deltam(2, 6, 4, 1, 3, 1, 1, 500, 1, exec_of(state));
    benchmark::DoNotOptimize(r.successes);
  }
  state.SetItemsProcessed(state.iterations() * 500);
  label(state);
}

void BM_Roundtrip(benchmark::State& state) {
  for (auto _ : state) {
    auto r = rankfuzz::mc_roundtrip(2, 8, 8, 4, 1, 500, 1, exec_of(state));
    benchmark::DoNotOptimize(r.successes);
  }
  state.SetItemsProcessed(state.iterations() * 500);
  label(state);
}

}  // namespace

BENCHMARK(BM_Lemma2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Prop2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Prop4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Roundtrip)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
