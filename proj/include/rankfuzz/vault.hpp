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
#include <utility>
#include <vector>

#include "rankfuzz/bignum.hpp"
#include "rankfuzz/digest.hpp"
#include "rankfuzz/field.hpp"
#include "rankfuzz/linpoly.hpp"
#include "rankfuzz/random.hpp"

namespace rankfuzz {

/// Parameters of a linearized-polynomial fuzzy vault: keys are sigma-
/// polynomials of sigma-degree < ell over F_{q^m}; feature sets have n
/// elements.
struct VaultParams {
  unsigned q = 2;
  unsigned m = 0;
  std::size_t n = 0;
  std::size_t ell = 0;
  unsigned s = 1;

  /// Throws unless 1 <= ell < n <= m, s is a valid twist for m and
  /// q^m <= 2^20.
  void validate() const;
  ExtField field() const { return ExtField(q, m); }

  friend bool operator==(const VaultParams&, const VaultParams&) = default;
};

/// n distinct, F_q-independent elements.
class FeatureSet {
 public:
  FeatureSet(const ExtField& ctx, std::vector<Felem> elems);

  std::span<const Felem> elems() const noexcept { return elems_; }
  std::size_t size() const noexcept { return elems_.size(); }

 private:
  std::vector<Felem> elems_;
};

struct SecretKey {
  std::vector<Felem> coeffs;
  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

Digest key_digest(const SecretKey& key);
LinearizedPoly key_poly(const VaultParams& params, const SecretKey& key);

/// Exact probability that n uniformly chosen distinct elements of F_{q^m}
/// are F_q-independent: prod_{i<n} (q^m - q^i) / (q^m - i).
BigRational independence_probability(unsigned q, unsigned m, unsigned n);

/// A total table x -> y over F_{q^m}: y = kappa(x) on the feature set,
/// y != kappa(x) everywhere else.
class Vault {
 public:
  /// Takes ownership of a table indexed by ExtField::index_of.
  Vault(VaultParams params, std::vector<Felem> table, Digest key_digest);

  /// Builds a vault from an unordered point list; every element of the
  /// field must appear exactly once.
  static Vault from_points(VaultParams params,
                           std::span<const std::pair<Felem, Felem>> points,
                           Digest key_digest);

  const VaultParams& params() const noexcept { return params_; }
  const ExtField& field() const noexcept { return ctx_; }
  const Digest& key_digest() const noexcept { return key_digest_; }
  const Felem& lookup(const Felem& x) const { return table_[ctx_.index_of(x)]; }
  std::span<const Felem> table() const noexcept { return table_; }

  /// (x, y) pairs sorted by the canonical bytes of x.
  std::vector<std::pair<Felem, Felem>> sorted_points() const;

 private:
  VaultParams params_;
  ExtField ctx_;
  std::vector<Felem> table_;
  Digest key_digest_;
};

Vault lock(const VaultParams& params, const FeatureSet& features, const SecretKey& key,
           Rng& rng);

enum class UnlockFailure { None, DecodingFailure, DigestMismatch };

struct UnlockResult {
  std::optional<SecretKey> key;
  UnlockFailure failure = UnlockFailure::None;
  /// Rank of the error the decoder corrected, when decoding succeeded.
  std::optional<std::size_t> error_rank;
};

UnlockResult unlock(const Vault& vault, const FeatureSet& witness);

}  // namespace rankfuzz
