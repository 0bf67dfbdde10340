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

#include "rankfuzz/vault.hpp"

#include <algorithm>
#include <string>

#include "rankfuzz/codec.hpp"
#include "rankfuzz/gabidulin.hpp"

namespace rankfuzz {

void VaultParams::validate() const {
  if (ell < 1 || ell >= n || n > m)
    throw Error(ErrorCode::BadDimensions,
                "need 1 <= ell < n <= m, got ell = " + std::to_string(ell) +
                    ", n = " + std::to_string(n) + ", m = " + std::to_string(m));
  if (!valid_twist(s, m))
    throw Error(ErrorCode::BadTwist,
                "twist " + std::to_string(s) + " is not coprime to m = " + std::to_string(m));
  const ExtField ctx(q, m);
  const auto order = ctx.order();
  if (!order || *order > (std::uint64_t{1} << 20))
    throw Error(ErrorCode::TooLarge, "vault needs q^m <= 2^20");
}

FeatureSet::FeatureSet(const ExtField& ctx, std::vector<Felem> elems) : elems_(std::move(elems)) {
  ctx.check(elems_);
  auto sorted = elems_;
  std::sort(sorted.begin(), sorted.end(), index_less);
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::DuplicateFeatures, "feature set contains a repeated element");
  if (!is_independent(ctx, elems_))
    throw Error(ErrorCode::DependentFeatures, "features are not F_q-linearly independent");
}

Digest key_digest(const SecretKey& key) { return sha256(codec::vector_bytes(key.coeffs)); }

LinearizedPoly key_poly(const VaultParams& params, const SecretKey& key) {
  if (key.coeffs.size() != params.ell)
    throw Error(ErrorCode::ParamMismatch, "key has " + std::to_string(key.coeffs.size()) +
                                              " coefficients, expected ell = " +
                                              std::to_string(params.ell));
  return LinearizedPoly(params.field(), params.s, key.coeffs);
}

BigRational independence_probability(unsigned q, unsigned m, unsigned n) {
  if (n > m) throw Error(ErrorCode::BadDimensions, "need n <= m");
  const BigInt qm = boost::multiprecision::pow(BigInt(q), m);
  BigRational p = 1;
  BigInt qi = 1;
  for (unsigned i = 0; i < n; ++i) {
    p *= BigRational(qm - qi, qm - i);
    qi *= q;
  }
  return p;
}

Vault::Vault(VaultParams params, std::vector<Felem> table, Digest key_digest)
    : params_(params), ctx_(params.field()), table_(std::move(table)), key_digest_(key_digest) {
  params_.validate();
  if (table_.size() != ctx_.size())
    throw Error(ErrorCode::ParamMismatch, "vault table must cover the whole field");
  ctx_.check(table_);
}

Vault Vault::from_points(VaultParams params, std::span<const std::pair<Felem, Felem>> points,
                         Digest key_digest) {
  params.validate();
  const ExtField ctx = params.field();
  if (points.size() != ctx.size())
    throw Error(ErrorCode::ParamMismatch, "vault has " + std::to_string(points.size()) +
                                              " points, field has " +
                                              std::to_string(ctx.size()));
  std::vector<Felem> table(ctx.size(), ctx.zero());
  std::vector<bool> seen(ctx.size(), false);
  for (const auto& [x, y] : points) {
    const auto idx = ctx.index_of(x);
    ctx.check(y);
    if (seen[idx]) throw Error(ErrorCode::ParamMismatch, "vault lists a point twice");
    seen[idx] = true;
    table[idx] = y;
  }
  return Vault(params, std::move(table), key_digest);
}

std::vector<std::pair<Felem, Felem>> Vault::sorted_points() const {
  std::vector<std::pair<Felem, Felem>> out;
  out.reserve(table_.size());
  for (std::uint64_t idx = 0; idx < table_.size(); ++idx)
    out.emplace_back(ctx_.element(idx), table_[idx]);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return bytes_less(a.first, b.first); });
  return out;
}

Vault lock(const VaultParams& params, const FeatureSet& features, const SecretKey& key,
           Rng& rng) {
  params.validate();
  const ExtField ctx = params.field();
  if (features.size() != params.n)
    throw Error(ErrorCode::ParamMismatch, "feature set has " + std::to_string(features.size()) +
                                              " elements, expected n = " +
                                              std::to_string(params.n));
  ctx.check(features.elems());
  const auto kappa = key_poly(params, key);

  std::vector<Felem> table = lp_eval_all(kappa);
  std::vector<bool> authentic(table.size(), false);
  for (const auto& a : features.elems()) authentic[ctx.index_of(a)] = true;

  // Chaff: uniform over F_{q^m} \ {kappa(x)}, drawn in index order.
  const std::uint64_t size = table.size();
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    if (authentic[idx]) continue;
    std::uint64_t r = rng.below(size - 1);
    if (r >= ctx.index_of(table[idx])) ++r;
    table[idx] = ctx.element(r);
  }
  return Vault(params, std::move(table), key_digest(key));
}

UnlockResult unlock(const Vault& vault, const FeatureSet& witness) {
  const auto& params = vault.params();
  const auto& ctx = vault.field();
  if (witness.size() != params.n)
    throw Error(ErrorCode::ParamMismatch, "witness has " + std::to_string(witness.size()) +
                                              " elements, expected n = " +
                                              std::to_string(params.n));
  const std::vector<Felem> points(witness.elems().begin(), witness.elems().end());
  const GabidulinCode code(ctx, params.n, params.ell, params.s, points);

  std::vector<Felem> received;
  received.reserve(points.size());
  for (const auto& w : points) received.push_back(vault.lookup(w));

  UnlockResult result;
  const auto decoded = decode(code, received);
  if (!decoded) {
    result.failure = UnlockFailure::DecodingFailure;
    return result;
  }
  result.error_rank = decoded->error_rank;
  SecretKey key{decoded->message};
  if (key_digest(key) != vault.key_digest()) {
    result.failure = UnlockFailure::DigestMismatch;
    return result;
  }
  result.key = std::move(key);
  return result;
}

}  // namespace rankfuzz
