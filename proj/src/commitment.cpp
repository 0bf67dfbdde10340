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

#include "rankfuzz/commitment.hpp"

#include <algorithm>
#include <string>

#include "rankfuzz/codec.hpp"

namespace rankfuzz {

Digest codeword_digest(const ExtField& ctx, std::span<const Felem> codeword) {
  return sha256(codec::matrix_bytes(vec_to_mat(ctx, codeword)));
}

Commitment commit_with_message(const GabidulinCode& code, std::span<const Felem> b,
                               std::span<const Felem> message) {
  const auto& ctx = code.field();
  if (b.size() != code.length())
    throw Error(ErrorCode::LengthMismatch, "witness has length " + std::to_string(b.size()) +
                                               ", code length " +
                                               std::to_string(code.length()));
  ctx.check(b);
  const auto codeword = encode(code, message);

  Commitment com;
  com.q = ctx.q();
  com.m = ctx.m();
  com.n = code.length();
  com.k = code.dimension();
  com.s = code.twist();
  com.points.assign(code.points().begin(), code.points().end());
  com.offset.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) com.offset.push_back(ctx.sub(b[i], codeword[i]));
  com.digest = codeword_digest(ctx, codeword);
  return com;
}

Commitment commit(const GabidulinCode& code, std::span<const Felem> b, Rng& rng) {
  if (b.size() != code.length())
    throw Error(ErrorCode::LengthMismatch, "witness has length " + std::to_string(b.size()) +
                                               ", code length " +
                                               std::to_string(code.length()));
  const auto message = random_vector(code.field(), code.dimension(), rng);
  return commit_with_message(code, b, message);
}

GabidulinCode commitment_code(const Commitment& com) {
  return GabidulinCode(ExtField(com.q, com.m), com.n, com.k, com.s, com.points);
}

VerifyResult verify(const GabidulinCode& code, std::span<const Felem> b_prime,
                    const Commitment& com) {
  const auto& ctx = code.field();
  const bool same_code = com.q == ctx.q() && com.m == ctx.m() && com.n == code.length() &&
                         com.k == code.dimension() && com.s == code.twist() &&
                         std::equal(com.points.begin(), com.points.end(),
                                    code.points().begin(), code.points().end());
  if (!same_code || com.offset.size() != code.length())
    throw Error(ErrorCode::ParamMismatch, "commitment was made with a different code");
  if (b_prime.size() != code.length())
    throw Error(ErrorCode::LengthMismatch, "candidate has length " +
                                               std::to_string(b_prime.size()) +
                                               ", code length " +
                                               std::to_string(code.length()));

  std::vector<Felem> shifted;
  shifted.reserve(b_prime.size());
  for (std::size_t i = 0; i < b_prime.size(); ++i)
    shifted.push_back(ctx.sub(b_prime[i], com.offset[i]));

  VerifyResult result;
  auto decoded = decode(code, shifted);
  if (!decoded) {
    result.reason = RejectReason::DecodingFailure;
    return result;
  }
  if (codeword_digest(ctx, decoded->codeword) != com.digest) {
    result.reason = RejectReason::DigestMismatch;
    return result;
  }
  result.accepted = true;
  result.error_rank = decoded->error_rank;
  result.codeword = std::move(decoded->codeword);
  return result;
}

}  // namespace rankfuzz
