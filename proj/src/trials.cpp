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

#include "rankfuzz/trials.hpp"

#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rankfuzz {

void Tally::add(const TrialOutcome& outcome) {
  ++trials;
  if (outcome.success) ++successes;
  if (outcome.violation) ++violations;
  ++strata[outcome.stratum];
}

void Tally::merge(const Tally& other) {
  trials += other.trials;
  successes += other.successes;
  violations += other.violations;
  for (const auto& [key, count] : other.strata) strata[key] += count;
}

int trial_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

Tally run_trials_serial(std::uint64_t count, const TrialKernel& kernel) {
  Tally tally;
  for (std::uint64_t i = 0; i < count; ++i) tally.add(kernel(i));
  return tally;
}

Tally run_trials_parallel(std::uint64_t count, const TrialKernel& kernel) {
  const int threads = trial_threads();
  std::vector<Tally> partial(static_cast<std::size_t>(threads));
  std::vector<std::pair<std::uint64_t, std::exception_ptr>> errors(
      static_cast<std::size_t>(threads),
      {std::numeric_limits<std::uint64_t>::max(), nullptr});
  const auto n = static_cast<long long>(count);

#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
#ifdef _OPENMP
    const auto tid = static_cast<std::size_t>(omp_get_thread_num());
#else
    const std::size_t tid = 0;
#endif
    const auto idx = static_cast<std::uint64_t>(i);
    if (errors[tid].second && errors[tid].first < idx) continue;
    try {
      partial[tid].add(kernel(idx));
    } catch (...) {
      if (idx < errors[tid].first) errors[tid] = {idx, std::current_exception()};
    }
  }

  const std::pair<std::uint64_t, std::exception_ptr>* first = nullptr;
  for (const auto& e : errors)
    if (e.second && (!first || e.first < first->first)) first = &e;
  if (first) std::rethrow_exception(first->second);

  Tally total;
  for (const auto& t : partial) total.merge(t);
  return total;
}

Tally run_trials(std::uint64_t count, const TrialKernel& kernel, Exec exec) {
  return exec == Exec::Serial ? run_trials_serial(count, kernel)
                              : run_trials_parallel(count, kernel);
}

}  // namespace rankfuzz
