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
#include <optional>
#include <span>
#include <vector>

#include "rankfuzz/bignum.hpp"

#include "rankfuzz/field.hpp"
#include "rankfuzz/linpoly.hpp"

namespace rankfuzz {


/// Generalized Gabidulin code G_{k,s}(g_1, ..., g_n) over F_{q^m}: the
/// evaluations of sigma-polynomials of sigma-degree < k at n F_q-independent
/// points. Minimum rank distance n - k + 1; corrects t = (n - k) / 2 errors.
class GabidulinCode {
 public:
  GabidulinCode(ExtField ctx, std::size_t n, std::size_t k, unsigned s,
                std::vector<Felem> points);

  const ExtField& field() const noexcept { return ctx_; }
  std::size_t length() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return k_; }
  unsigned twist() const noexcept { return s_; }
  std::size_t capability() const noexcept { return (n_ - k_) / 2; }
  std::span<const Felem> points() const noexcept { return points_; }
  FelemMatrix generator() const { return moore_matrix(ctx_, s_, k_, points_); }

  /// The message polynomial sum_j message[j] x^[s j].
  LinearizedPoly message_poly(std::span<const Felem> message) const;

 private:
  ExtField ctx_;
  std::size_t n_;
  std::size_t k_;
  unsigned s_;
  std::vector<Felem> points_;
};

std::vector<Felem> encode(const GabidulinCode& code, std::span<const Felem> message);

struct Decoded {
  std::vector<Felem> message;
  std::vector<Felem> codeword;
  std::size_t error_rank = 0;
};

/// Returns the unique codeword within rank distance t of `received`, or
/// nullopt (decoding failure). Never returns a codeword farther than t.
std::optional<Decoded> decode(const GabidulinCode& code, std::span<const Felem> received);

/// min{q^(m(n-d+1)), q^(n(m-d+1))}
BigInt singleton_bound(unsigned q, unsigned m, unsigned n, unsigned d);

/// Minimum rank weight over all nonzero codewords; requires q^(mk) <= 2^20.
std::size_t min_distance_exhaustive(const GabidulinCode& code);

}  // namespace rankfuzz
