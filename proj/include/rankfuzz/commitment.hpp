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
#include <optional>
#include <span>
#include <vector>

#include "rankfuzz/digest.hpp"
#include "rankfuzz/field.hpp"
#include "rankfuzz/gabidulin.hpp"
#include "rankfuzz/random.hpp"

namespace rankfuzz {

/// Rank-metric fuzzy commitment to a witness b: the offset b - c_b for a
/// random codeword c_b, plus the digest of c_b.
struct Commitment {
  unsigned q = 0;
  unsigned m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  unsigned s = 1;
  std::vector<Felem> points;
  std::vector<Felem> offset;
  Digest digest{};
  /// Provenance only; never hashed.
  std::optional<std::uint64_t> seed;
};

/// SHA-256 of the canonical matrix serialization of the codeword.
Digest codeword_digest(const ExtField& ctx, std::span<const Felem> codeword);

Commitment commit(const GabidulinCode& code, std::span<const Felem> b, Rng& rng);
/// Deterministic core of commit with the codeword's message given.
Commitment commit_with_message(const GabidulinCode& code, std::span<const Felem> b,
                               std::span<const Felem> message);

/// Rebuilds the code a commitment was made with.
GabidulinCode commitment_code(const Commitment& com);

enum class RejectReason { None, DecodingFailure, DigestMismatch };

struct VerifyResult {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  std::vector<Felem> codeword;  // set on accept
  std::size_t error_rank = 0;   // rank distance between b' and b on accept
};

VerifyResult verify(const GabidulinCode& code, std::span<const Felem> b_prime,
                    const Commitment& com);

}  // namespace rankfuzz
