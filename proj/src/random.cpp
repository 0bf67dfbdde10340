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

#include "rankfuzz/random.hpp"

#include <array>

#include "rankfuzz/digest.hpp"
#include "rankfuzz/linalg.hpp"

namespace rankfuzz {

namespace {

constexpr int kMaxRetries = 10000;

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::array<std::uint8_t, 16> buf{};
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<std::uint8_t>(master >> (8 * i));
    buf[8 + i] = static_cast<std::uint8_t>(index >> (8 * i));
  }
  const Digest d = sha256(buf);
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed |= std::uint64_t{d[i]} << (8 * i);
  return seed;
}

Felem random_element(const ExtField& ctx, Rng& rng) {
  std::array<std::uint8_t, kMaxDegree> digits{};
  for (unsigned i = 0; i < ctx.m(); ++i) digits[i] = static_cast<std::uint8_t>(rng.below(ctx.q()));
  return ctx.from_digits({digits.data(), ctx.m()});
}

Felem random_nonzero(const ExtField& ctx, Rng& rng) {
  while (true) {
    Felem a = random_element(ctx, rng);
    if (!a.is_zero()) return a;
  }
}

std::vector<Felem> random_vector(const ExtField& ctx, std::size_t n, Rng& rng) {
  std::vector<Felem> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(ctx, rng));
  return v;
}

std::vector<Felem> random_independent(const ExtField& ctx, std::size_t n, Rng& rng) {
  if (n > ctx.m())
    throw Error(ErrorCode::BadDimensions, "cannot draw more than m independent elements");
  std::vector<Felem> out;
  out.reserve(n);
  while (out.size() < n) {
    int tries = 0;
    while (true) {
      out.push_back(random_element(ctx, rng));
      if (is_independent(ctx, out)) break;
      out.pop_back();
      if (++tries == kMaxRetries)
        throw Error(ErrorCode::InfeasibleShape, "could not draw an independent element");
    }
  }
  return out;
}

std::vector<Felem> random_rank_error(const ExtField& ctx, std::size_t n, std::size_t e,
                                     Rng& rng) {
  if (e > n || e > ctx.m())
    throw Error(ErrorCode::BadRange, "error rank exceeds min(n, m)");
  const auto a = random_independent(ctx, e, rng);

  const linalg::PrimeOps ops{ctx.q()};
  linalg::Rows<std::uint8_t> rows;
  while (rows.size() < e) {
    std::vector<std::uint8_t> row(n);
    for (auto& x : row) x = static_cast<std::uint8_t>(rng.below(ctx.q()));
    rows.push_back(row);
    if (linalg::rank(ops, rows, n) < rows.size()) rows.pop_back();
  }

  std::vector<Felem> err(n, ctx.zero());
  for (std::size_t j = 0; j < e; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (rows[j][i]) err[i] = ctx.add(err[i], ctx.scale(rows[j][i], a[j]));
  return err;
}

}  // namespace rankfuzz
