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

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "rankfuzz/field.hpp"

namespace rankfuzz {

/// Seeded generator. mt19937_64 output is fixed by the standard, and all
/// draws below are plain reductions of it, so streams are reproducible
/// across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Value in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
};

/// Sub-seed for trial `index`: first 8 bytes (little-endian) of
/// SHA-256(master || index), both encoded as 8 little-endian bytes.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

Felem random_element(const ExtField& ctx, Rng& rng);
Felem random_nonzero(const ExtField& ctx, Rng& rng);
std::vector<Felem> random_vector(const ExtField& ctx, std::size_t n, Rng& rng);

/// n F_q-independent elements (n <= m), drawn uniformly and resampled
/// until independent.
std::vector<Felem> random_independent(const ExtField& ctx, std::size_t n, Rng& rng);

/// An error vector of length n with rank exactly e: sum_j a_j * row_j with
/// {a_j} independent in F_{q^m} and {row_j} independent in F_q^n.
std::vector<Felem> random_rank_error(const ExtField& ctx, std::size_t n, std::size_t e,
                                     Rng& rng);

}  // namespace rankfuzz
