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

#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <utility>

// Trial runners for the Monte-Carlo experiments. Every trial derives its own
// randomness from (master seed, trial index), so the serial reference loop
// and the OpenMP loop produce identical tallies.

namespace rankfuzz {

struct TrialOutcome {
  bool success = false;
  /// A property that must hold on every trial did not.
  bool violation = false;
  /// Conditioning stratum of the trial, e.g. (|A n W|, dim(A n W)).
  std::pair<int, int> stratum{0, 0};
};

struct Tally {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t violations = 0;
  std::map<std::pair<int, int>, std::uint64_t> strata;

  void add(const TrialOutcome& outcome);
  void merge(const Tally& other);

  friend bool operator==(const Tally&, const Tally&) = default;
};

using TrialKernel = std::function<TrialOutcome(std::uint64_t index)>;

enum class Exec { Serial, Parallel };

Tally run_trials_serial(std::uint64_t count, const TrialKernel& kernel);
/// OpenMP over trial indices; per-thread tallies merged by summation. If any
/// trial throws, the exception of the lowest failing index is rethrown.
Tally run_trials_parallel(std::uint64_t count, const TrialKernel& kernel);
Tally run_trials(std::uint64_t count, const TrialKernel& kernel, Exec exec);

/// Number of threads the parallel runner uses (1 without OpenMP).
int trial_threads();

}  // namespace rankfuzz
