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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankfuzz/bignum.hpp"
#include "rankfuzz/field.hpp"
#include "rankfuzz/linpoly.hpp"
#include "rankfuzz/trials.hpp"
#include "rankfuzz/vault.hpp"

namespace rankfuzz {

// ---------------------------------------------------------------------------
// Set and subspace relations

/// |A \ W| + |W \ A|
std::size_t set_difference(std::span<const Felem> a, std::span<const Felem> w);

/// Basis of <A> n <W> over F_q.
std::vector<Felem> intersection_basis(const ExtField& ctx, std::span<const Felem> a,
                                      std::span<const Felem> w);

/// dim<A> + dim<W> - 2 dim(<A> n <W>)
std::size_t subspace_distance(const ExtField& ctx, std::span<const Felem> a,
                              std::span<const Felem> w);

// ---------------------------------------------------------------------------
// The map L_Z interpolating the vault points indexed by a witness set

/// F_q-linear map given by its values on an independent set.
class LinearMap {
 public:
  LinearMap(ExtField ctx, std::vector<Felem> basis, std::vector<Felem> images);

  std::span<const Felem> basis() const noexcept { return basis_; }
  std::span<const Felem> images() const noexcept { return images_; }
  /// Throws DimensionMismatch when x lies outside the span of the basis.
  Felem apply(const Felem& x) const;

 private:
  ExtField ctx_;
  std::vector<Felem> basis_;
  std::vector<Felem> images_;
  MatFq basis_matrix_;
};

/// m = n: the sigma-polynomial of sigma-degree < n with L_Z(x) = table[x]
/// for every x in W.
LinearizedPoly build_lz_basic(const Vault& vault, const FeatureSet& w);

/// m >= n: L_Z on <A> + <W>. W carries its vault values; W is completed to
/// a basis by the elements g_i of A (ascending i) that enlarge the span,
/// with L_Z(g_i) = kappa(g_i) + alpha^(q^i). Needs the key, so this is an
/// analysis device, not something an unlocker can build.
LinearMap build_lz_generalized(const Vault& vault, const FeatureSet& w, const FeatureSet& a,
                               const LinearizedPoly& kappa, const Felem& alpha);

/// rank of (kappa - map) restricted to the span of `subspace`.
std::size_t difference_rank(const LinearizedPoly& kappa, const LinearMap& map,
                            std::span<const Felem> subspace);

// ---------------------------------------------------------------------------
// Closed forms

/// prod_{i=0}^{n-u-1} (q^n - q^i) / (q^n - 1)
BigRational prob_prop_delta(unsigned q, unsigned n, unsigned u);

/// prod_{i=n-v}^{n-u-1} (q^m - q^i) / (q^m - 1)
BigRational prob_prop_deltam(unsigned q, unsigned m, unsigned n, unsigned u, unsigned v);

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { ExactMatch, Within3Sigma, Flagged, Failed };

std::string verdict_name(Verdict v);

struct TrialReport {
  std::string claim;
  /// Parameters in presentation order.
  std::vector<std::pair<std::string, long long>> params;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  /// Claimed success probability. For unconditional experiments this is
  /// the mean of the conditional closed forms over the sampled strata.
  BigRational formula = 0;
  double standard_error = 0.0;
  bool exhaustive = false;
  std::uint64_t violations = 0;
  std::uint64_t seed = 0;

  double estimate() const {
    return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  }
  Verdict verdict() const;
};

// ---------------------------------------------------------------------------
// Experiments

/// Independence of uniform n-subsets of F_{q^m}. Exhaustive (exact) when
/// q^m <= 2^12 and C(q^m, n) <= 10^6; `trials` is ignored then.
TrialReport mc_lemma2(unsigned q, unsigned m, unsigned n, std::uint64_t trials,
                      std::uint64_t seed, Exec exec = Exec::Parallel);

/// Basic vault (m = n), |A n W| = u: event 2 d_R = d_Delta.
TrialReport mc_prop_delta(unsigned q, unsigned n, unsigned u, unsigned ell, unsigned s,
                          std::uint64_t trials, std::uint64_t seed, Exec exec = Exec::Parallel);

/// Generalized vault, |A n W| = u and dim(<A> n <W>) = v.
TrialReport mc_prop_deltam(unsigned q, unsigned m, unsigned n, unsigned u, unsigned v,
                           unsigned ell, unsigned s, std::uint64_t trials, std::uint64_t seed,
                           Exec exec = Exec::Parallel);

enum class Scheme { Basic, Generalized };

enum class WitnessDistribution {
  /// u uniform in {0..n}; the n - u foreign elements uniform subject to
  /// independence.
  UniformOverlap,
  /// W a uniform independent n-subset of F_{q^m}.
  UniformSet,
};

TrialReport mc_unconditional(Scheme scheme, unsigned q, unsigned m, unsigned n, unsigned ell,
                             unsigned s, WitnessDistribution dist, std::uint64_t trials,
                             std::uint64_t seed, Exec exec = Exec::Parallel);

/// Gabidulin round trips with exact-rank errors, e cycling through 0..t.
TrialReport mc_roundtrip(unsigned q, unsigned m, unsigned n, unsigned k, unsigned s,
                         std::uint64_t trials, std::uint64_t seed, Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// Witness sampling, exposed for tests

/// u random elements of A, then foreign elements (outside A) until W is an
/// independent n-set.
std::vector<Felem> sample_witness_overlap(const ExtField& ctx, std::span<const Felem> a,
                                          unsigned u, Rng& rng);

/// W = {n - v elements outside <A>, v - u elements of <A> \ A, u elements
/// of A}, jointly independent, so that |A n W| = u and dim = v.
std::vector<Felem> sample_witness_shape(const ExtField& ctx, std::span<const Felem> a,
                                        unsigned u, unsigned v, Rng& rng);

}  // namespace rankfuzz
