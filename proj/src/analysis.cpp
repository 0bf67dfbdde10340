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

#include "rankfuzz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankfuzz/gabidulin.hpp"
#include "rankfuzz/random.hpp"

namespace rankfuzz {

namespace {

constexpr int kMaxRetries = 10000;

bool contains(std::span<const Felem> set, const Felem& x) {
  return std::find(set.begin(), set.end(), x) != set.end();
}

std::vector<Felem> greedy_basis(const ExtField& ctx, std::span<const Felem> elems) {
  std::vector<Felem> basis;
  for (const auto& x : elems) {
    basis.push_back(x);
    if (!is_independent(ctx, basis)) basis.pop_back();
  }
  return basis;
}

std::size_t overlap(std::span<const Felem> a, std::span<const Felem> w) {
  return static_cast<std::size_t>(
      std::count_if(w.begin(), w.end(), [&](const Felem& x) { return contains(a, x); }));
}

// Appends a fresh element produced by `draw` to `out` if `accept` holds and
// the span of `anchor` + `out` grows; retries up to kMaxRetries.
template <class Draw, class Accept>
void append_independent(const ExtField& ctx, std::span<const Felem> anchor,
                        std::vector<Felem>& out, Draw draw, Accept accept) {
  std::vector<Felem> probe(anchor.begin(), anchor.end());
  probe.insert(probe.end(), out.begin(), out.end());
  for (int tries = 0; tries < kMaxRetries; ++tries) {
    const Felem x = draw();
    if (!accept(x)) continue;
    probe.push_back(x);
    if (is_independent(ctx, probe)) {
      out.push_back(x);
      return;
    }
    probe.pop_back();
  }
  throw Error(ErrorCode::InfeasibleShape, "no admissible witness element found after " +
                                              std::to_string(kMaxRetries) + " draws");
}

std::vector<Felem> choose_subset(std::span<const Felem> a, unsigned u, Rng& rng) {
  std::vector<Felem> pool(a.begin(), a.end());
  for (unsigned i = 0; i < u; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(u);
  return pool;
}

double to_double(const BigRational& r) { return r.convert_to<double>(); }

void set_fixed_formula(TrialReport& report, const BigRational& p) {
  report.formula = p;
  const double pd = to_double(p);
  report.standard_error =
      report.trials ? std::sqrt(pd * (1.0 - pd) / static_cast<double>(report.trials)) : 0.0;
}

TrialReport report_from(std::string claim, std::vector<std::pair<std::string, long long>> params,
                        const Tally& tally, std::uint64_t seed) {
  TrialReport r;
  r.claim = std::move(claim);
  r.params = std::move(params);
  r.trials = tally.trials;
  r.successes = tally.successes;
  r.violations = tally.violations;
  r.seed = seed;
  return r;
}

void require_trials(std::uint64_t trials) {
  if (trials == 0) throw Error(ErrorCode::BadRange, "trials must be at least 1");
}

struct Instance {
  VaultParams params;
  SecretKey key;
  LinearizedPoly kappa;
  FeatureSet a;
  Vault vault;
};

Instance make_instance(const VaultParams& params, const ExtField& ctx, Rng& rng) {
  SecretKey key{random_vector(ctx, params.ell, rng)};
  auto kappa = key_poly(params, key);
  FeatureSet a(ctx, random_independent(ctx, params.n, rng));
  Vault vault = lock(params, a, key, rng);
  return Instance{params, std::move(key), std::move(kappa), std::move(a), std::move(vault)};
}

struct ChainValues {
  std::size_t d_s;
  std::size_t d_r;
  std::size_t rk_inter;
  std::size_t d_delta;

  bool holds() const {
    return d_s <= 2 * d_r && 2 * d_r <= d_s + 2 * rk_inter && d_s + 2 * rk_inter <= d_delta;
  }
};

ChainValues generalized_chain(const ExtField& ctx, const Instance& inst, const FeatureSet& w,
                              const Felem& alpha) {
  const auto map = build_lz_generalized(inst.vault, w, inst.a, inst.kappa, alpha);
  const auto inter = intersection_basis(ctx, inst.a.elems(), w.elems());
  return ChainValues{subspace_distance(ctx, inst.a.elems(), w.elems()),
                     difference_rank(inst.kappa, map, inst.a.elems()),
                     difference_rank(inst.kappa, map, inter),
                     set_difference(inst.a.elems(), w.elems())};
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t set_difference(std::span<const Felem> a, std::span<const Felem> w) {
  std::size_t only_a = 0, only_w = 0;
  for (const auto& x : a)
    if (!contains(w, x)) ++only_a;
  for (const auto& x : w)
    if (!contains(a, x)) ++only_w;
  return only_a + only_w;
}

std::vector<Felem> intersection_basis(const ExtField& ctx, std::span<const Felem> a,
                                      std::span<const Felem> w) {
  const auto ba = greedy_basis(ctx, a);
  const auto bw = greedy_basis(ctx, w);
  if (ba.empty() || bw.empty()) return {};
  // Kernel vectors (x, y) of [ba | bw] give sum x_i ba_i = -sum y_j bw_j.
  std::vector<Felem> joint = ba;
  joint.insert(joint.end(), bw.begin(), bw.end());
  const MatFq mat = vec_to_mat(ctx, joint);
  const auto sol = solve_fq(mat, FqVector(ctx.m(), 0));
  std::vector<Felem> out;
  for (const auto& v : sol.kernel) {
    Felem x = ctx.zero();
    for (std::size_t i = 0; i < ba.size(); ++i)
      if (v[i]) x = ctx.add(x, ctx.scale(v[i], ba[i]));
    out.push_back(x);
  }
  return out;
}

std::size_t subspace_distance(const ExtField& ctx, std::span<const Felem> a,
                              std::span<const Felem> w) {
  const std::size_t da = a.empty() ? 0 : span_rank(ctx, a);
  const std::size_t dw = w.empty() ? 0 : span_rank(ctx, w);
  std::vector<Felem> joint(a.begin(), a.end());
  joint.insert(joint.end(), w.begin(), w.end());
  const std::size_t dsum = joint.empty() ? 0 : span_rank(ctx, joint);
  const std::size_t dint = da + dw - dsum;
  return da + dw - 2 * dint;
}

LinearMap::LinearMap(ExtField ctx, std::vector<Felem> basis, std::vector<Felem> images)
    : ctx_(std::move(ctx)), basis_(std::move(basis)), images_(std::move(images)) {
  if (basis_.size() != images_.size())
    throw Error(ErrorCode::LengthMismatch, "linear map needs one image per basis vector");
  ctx_.check(images_);
  if (!is_independent(ctx_, basis_))
    throw Error(ErrorCode::DependentFeatures, "linear map basis is F_q-dependent");
  basis_matrix_ = vec_to_mat(ctx_, basis_);
}

Felem LinearMap::apply(const Felem& x) const {
  ctx_.check(x);
  const auto sol = solve_fq(basis_matrix_, x.digits());
  if (!sol.solution)
    throw Error(ErrorCode::DimensionMismatch, "point outside the domain of the linear map");
  Felem y = ctx_.zero();
  for (std::size_t j = 0; j < basis_.size(); ++j)
    if ((*sol.solution)[j]) y = ctx_.add(y, ctx_.scale((*sol.solution)[j], images_[j]));
  return y;
}

LinearizedPoly build_lz_basic(const Vault& vault, const FeatureSet& w) {
  const auto& p = vault.params();
  if (p.m != p.n) throw Error(ErrorCode::DimensionMismatch, "basic L_Z needs m = n");
  if (w.size() != p.n)
    throw Error(ErrorCode::DependentFeatures, "witness must be a basis of F_{q^n}");
  std::vector<Felem> ys;
  ys.reserve(w.size());
  for (const auto& x : w.elems()) ys.push_back(vault.lookup(x));
  return lp_interpolate(vault.field(), w.elems(), ys, p.s);
}

LinearMap build_lz_generalized(const Vault& vault, const FeatureSet& w, const FeatureSet& a,
                               const LinearizedPoly& kappa, const Felem& alpha) {
  const auto& ctx = vault.field();
  const auto& p = vault.params();
  if (w.size() != p.n || a.size() != p.n)
    throw Error(ErrorCode::DependentFeatures, "feature sets must have n elements");
  ctx.check(alpha);
  std::vector<Felem> conj(ctx.m());
  for (unsigned i = 0; i < ctx.m(); ++i) conj[i] = ctx.frobenius(alpha, i);
  if (!is_independent(ctx, conj))
    throw Error(ErrorCode::NotNormal, "alpha does not generate a normal basis");

  std::vector<Felem> basis(w.elems().begin(), w.elems().end());
  std::vector<Felem> images;
  images.reserve(basis.size());
  for (const auto& x : basis) images.push_back(vault.lookup(x));
  const auto ga = a.elems();
  for (std::size_t i = 0; i < ga.size(); ++i) {
    basis.push_back(ga[i]);
    if (!is_independent(ctx, basis)) {
      basis.pop_back();
      continue;
    }
    // g_i with i counted from 1
    images.push_back(
        ctx.add(lp_eval(kappa, ga[i]), ctx.frobenius(alpha, static_cast<long long>(i + 1))));
  }
  return LinearMap(ctx, std::move(basis), std::move(images));
}

std::size_t difference_rank(const LinearizedPoly& kappa, const LinearMap& map,
                            std::span<const Felem> subspace) {
  if (subspace.empty()) return 0;
  const auto& ctx = kappa.field();
  std::vector<Felem> diffs;
  diffs.reserve(subspace.size());
  for (const auto& b : subspace) diffs.push_back(ctx.sub(lp_eval(kappa, b), map.apply(b)));
  return span_rank(ctx, diffs);
}

// ---------------------------------------------------------------------------

BigRational prob_prop_delta(unsigned q, unsigned n, unsigned u) {
  if (u > n) throw Error(ErrorCode::BadRange, "need 0 <= u <= n");
  return prob_prop_deltam(q, n, n, u, n);
}

BigRational prob_prop_deltam(unsigned q, unsigned m, unsigned n, unsigned u, unsigned v) {
  if (!(u <= v && v <= n && n <= m)) throw Error(ErrorCode::BadRange, "need 0 <= u <= v <= n <= m");
  const BigInt qm = boost::multiprecision::pow(BigInt(q), m);
  BigRational p = 1;
  for (unsigned i = n - v; i < n - u; ++i)
    p *= BigRational(qm - boost::multiprecision::pow(BigInt(q), i), qm - 1);
  return p;
}

// ---------------------------------------------------------------------------

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ExactMatch: return "exact_match";
    case Verdict::Within3Sigma: return "within_3sigma";
    case Verdict::Flagged: return "flagged";
    case Verdict::Failed: return "failed";
  }
  return "failed";
}

Verdict TrialReport::verdict() const {
  if (violations > 0 || trials == 0) return Verdict::Failed;
  const BigRational observed = BigRational(BigInt(successes), BigInt(trials));
  if (exhaustive) return observed == formula ? Verdict::ExactMatch : Verdict::Failed;
  if (standard_error == 0.0)
    return observed == formula ? Verdict::Within3Sigma : Verdict::Failed;
  const double dev = std::abs(estimate() - to_double(formula));
  if (dev <= 3.0 * standard_error) return Verdict::Within3Sigma;
  if (dev <= 4.0 * standard_error) return Verdict::Flagged;
  return Verdict::Failed;
}

// ---------------------------------------------------------------------------

std::vector<Felem> sample_witness_overlap(const ExtField& ctx, std::span<const Felem> a,
                                          unsigned u, Rng& rng) {
  const std::size_t n = a.size();
  if (u > n) throw Error(ErrorCode::BadRange, "overlap exceeds the feature count");
  std::vector<Felem> w = choose_subset(a, u, rng);
  while (w.size() < n) {
    std::vector<Felem> fresh;
    append_independent(
        ctx, w, fresh, [&] { return random_element(ctx, rng); },
        [&](const Felem& x) { return !contains(a, x); });
    w.push_back(fresh.front());
  }
  return w;
}

std::vector<Felem> sample_witness_shape(const ExtField& ctx, std::span<const Felem> a,
                                        unsigned u, unsigned v, Rng& rng) {
  const std::size_t n = a.size();
  if (!(u <= v && v <= n && n <= ctx.m()))
    throw Error(ErrorCode::BadRange, "need 0 <= u <= v <= n <= m");
  if (n - v > ctx.m() - n)
    throw Error(ErrorCode::InfeasibleShape,
                "cannot place " + std::to_string(n - v) + " witness elements outside <A>");

  const std::vector<Felem> chosen = choose_subset(a, u, rng);

  // v - u elements of <A> \ A, independent of the chosen A elements.
  std::vector<Felem> inside;
  const auto draw_in_span = [&] {
    Felem x = ctx.zero();
    for (const auto& g : a) x = ctx.add(x, ctx.scale(static_cast<unsigned>(rng.below(ctx.q())), g));
    return x;
  };
  for (unsigned i = u; i < v; ++i)
    append_independent(ctx, chosen, inside, draw_in_span,
                       [&](const Felem& x) { return !contains(a, x); });

  // n - v elements independent modulo <A>.
  std::vector<Felem> outside;
  for (std::size_t i = v; i < n; ++i)
    append_independent(
        ctx, a, outside, [&] { return random_element(ctx, rng); },
        [](const Felem&) { return true; });

  std::vector<Felem> w = outside;
  w.insert(w.end(), inside.begin(), inside.end());
  w.insert(w.end(), chosen.begin(), chosen.end());
  return w;
}

// ---------------------------------------------------------------------------

TrialReport mc_lemma2(unsigned q, unsigned m, unsigned n, std::uint64_t trials,
                      std::uint64_t seed, Exec exec) {
  if (n < 1 || n > m) throw Error(ErrorCode::BadDimensions, "need 1 <= n <= m");
  const ExtField ctx(q, m);
  const auto order = ctx.order();

  // C(q^m, n) <= 10^6 with q^m <= 2^12
  bool exhaustive = order && *order <= 4096;
  if (exhaustive) {
    double subsets = 1.0;
    for (unsigned i = 0; i < n; ++i)
      subsets = subsets * static_cast<double>(*order - i) / static_cast<double>(i + 1);
    exhaustive = subsets <= 1e6 + 0.5;
  }

  std::vector<std::pair<std::string, long long>> params{{"q", q}, {"m", m}, {"n", n}};
  Tally tally;
  if (exhaustive) {
    std::vector<std::uint64_t> combo(n);
    for (unsigned i = 0; i < n; ++i) combo[i] = i;
    std::vector<Felem> elems(n);
    while (true) {
      for (unsigned i = 0; i < n; ++i) elems[i] = ctx.element(combo[i]);
      tally.add(TrialOutcome{is_independent(ctx, elems), false, {0, 0}});
      int i = static_cast<int>(n) - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == *order - n + static_cast<unsigned>(i)) --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (auto j = static_cast<std::size_t>(i) + 1; j < n; ++j) combo[j] = combo[j - 1] + 1;
    }
  } else {
    require_trials(trials);
    const std::uint64_t size = ctx.size();
    tally = run_trials(
        trials,
        [&](std::uint64_t i) {
          Rng rng(derive_seed(seed, i));
          // Floyd's algorithm: a uniform n-subset of {0..size-1}.
          std::vector<std::uint64_t> picked;
          for (std::uint64_t j = size - n; j < size; ++j) {
            const std::uint64_t t = rng.below(j + 1);
            picked.push_back(std::find(picked.begin(), picked.end(), t) == picked.end() ? t : j);
          }
          std::vector<Felem> elems;
          for (auto idx : picked) elems.push_back(ctx.element(idx));
          return TrialOutcome{is_independent(ctx, elems), false, {0, 0}};
        },
        exec);
  }

  auto report = report_from("lemma2", std::move(params), tally, seed);
  report.exhaustive = exhaustive;
  set_fixed_formula(report, independence_probability(q, m, n));
  if (exhaustive) report.standard_error = 0.0;
  return report;
}

TrialReport mc_prop_delta(unsigned q, unsigned n, unsigned u, unsigned ell, unsigned s,
                          std::uint64_t trials, std::uint64_t seed, Exec exec) {
  if (u > n) throw Error(ErrorCode::BadRange, "need 0 <= u <= n");
  require_trials(trials);
  const VaultParams params{q, n, n, ell, s};
  params.validate();
  const ExtField ctx = params.field();

  const Tally tally = run_trials(
      trials,
      [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        const Instance inst = make_instance(params, ctx, rng);
        const FeatureSet w(ctx, sample_witness_overlap(ctx, inst.a.elems(), u, rng));
        const auto lz = build_lz_basic(inst.vault, w);
        const std::size_t d_r = lp_map_rank(lp_sub(inst.kappa, lz));
        const std::size_t d_delta = set_difference(inst.a.elems(), w.elems());
        return TrialOutcome{2 * d_r == d_delta, 2 * d_r > d_delta,
                            {static_cast<int>(u), static_cast<int>(n)}};
      },
      exec);

  auto report = report_from(
      "prop2", {{"q", q}, {"m", n}, {"n", n}, {"ell", ell}, {"s", s}, {"u", u}}, tally, seed);
  set_fixed_formula(report, prob_prop_delta(q, n, u));
  return report;
}

TrialReport mc_prop_deltam(unsigned q, unsigned m, unsigned n, unsigned u, unsigned v,
                           unsigned ell, unsigned s, std::uint64_t trials, std::uint64_t seed,
                           Exec exec) {
  if (!(u <= v && v <= n && n <= m)) throw Error(ErrorCode::BadRange, "need 0 <= u <= v <= n <= m");
  require_trials(trials);
  const VaultParams params{q, m, n, ell, s};
  params.validate();
  if (n - v > m - n)
    throw Error(ErrorCode::InfeasibleShape, "no witness with dim(<A> n <W>) = " +
                                                std::to_string(v) + " exists for n = " +
                                                std::to_string(n) + ", m = " + std::to_string(m));
  const ExtField ctx = params.field();
  const Felem alpha = find_normal_element(ctx);

  const Tally tally = run_trials(
      trials,
      [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        const Instance inst = make_instance(params, ctx, rng);
        const FeatureSet w(ctx, sample_witness_shape(ctx, inst.a.elems(), u, v, rng));
        const auto chain = generalized_chain(ctx, inst, w, alpha);
        return TrialOutcome{2 * chain.d_r == chain.d_delta, !chain.holds(),
                            {static_cast<int>(u), static_cast<int>(v)}};
      },
      exec);

  auto report = report_from("prop4",
                            {{"q", q}, {"m", m}, {"n", n}, {"ell", ell}, {"s", s}, {"u", u}, {"v", v}},
                            tally, seed);
  set_fixed_formula(report, prob_prop_deltam(q, m, n, u, v));
  return report;
}

TrialReport mc_unconditional(Scheme scheme, unsigned q, unsigned m, unsigned n, unsigned ell,
                             unsigned s, WitnessDistribution dist, std::uint64_t trials,
                             std::uint64_t seed, Exec exec) {
  require_trials(trials);
  if (scheme == Scheme::Basic && m != n)
    throw Error(ErrorCode::BadRange, "the basic scheme needs m = n");
  const VaultParams params{q, m, n, ell, s};
  params.validate();
  const ExtField ctx = params.field();
  const Felem alpha = find_normal_element(ctx);

  const Tally tally = run_trials(
      trials,
      [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        const Instance inst = make_instance(params, ctx, rng);
        std::vector<Felem> welems;
        if (dist == WitnessDistribution::UniformOverlap) {
          const auto u = static_cast<unsigned>(rng.below(n + 1));
          welems = sample_witness_overlap(ctx, inst.a.elems(), u, rng);
        } else {
          welems = random_independent(ctx, n, rng);
        }
        const FeatureSet w(ctx, std::move(welems));
        const auto u = static_cast<int>(overlap(inst.a.elems(), w.elems()));
        const auto v =
            static_cast<int>(intersection_basis(ctx, inst.a.elems(), w.elems()).size());

        if (scheme == Scheme::Basic) {
          const auto lz = build_lz_basic(inst.vault, w);
          const std::size_t d_r = lp_map_rank(lp_sub(inst.kappa, lz));
          const std::size_t d_delta = set_difference(inst.a.elems(), w.elems());
          return TrialOutcome{2 * d_r == d_delta, 2 * d_r > d_delta, {u, v}};
        }
        const auto chain = generalized_chain(ctx, inst, w, alpha);
        return TrialOutcome{2 * chain.d_r == chain.d_delta, !chain.holds(), {u, v}};
      },
      exec);

  auto report = report_from(
      scheme == Scheme::Basic ? "thm3" : "thm5",
      {{"q", q},
       {"m", m},
       {"n", n},
       {"ell", ell},
       {"s", s},
       {"distribution", dist == WitnessDistribution::UniformOverlap ? 0 : 1}},
      tally, seed);

  // Mixture of the conditional closed forms over the sampled strata.
  BigRational mean = 0;
  double variance = 0.0;
  for (const auto& [stratum, count] : tally.strata) {
    const auto p = prob_prop_deltam(q, m, n, static_cast<unsigned>(stratum.first),
                                    static_cast<unsigned>(stratum.second));
    mean += p * BigInt(count);
    const double pd = to_double(p);
    variance += static_cast<double>(count) * pd * (1.0 - pd);
  }
  report.formula = mean / BigInt(tally.trials);
  report.standard_error = std::sqrt(variance) / static_cast<double>(tally.trials);
  return report;
}

TrialReport mc_roundtrip(unsigned q, unsigned m, unsigned n, unsigned k, unsigned s,
                         std::uint64_t trials, std::uint64_t seed, Exec exec) {
  require_trials(trials);
  const ExtField ctx(q, m);
  // Validates the shape once up front.
  const GabidulinCode probe(ctx, n, k, s, [&] {
    std::vector<Felem> basis;
    for (unsigned i = 0; i < std::min(n, m); ++i) basis.push_back(ctx.basis(i));
    return basis;
  }());
  const std::size_t t = probe.capability();

  const Tally tally = run_trials(
      trials,
      [&](std::uint64_t i) {
        Rng rng(derive_seed(seed, i));
        const GabidulinCode code(ctx, n, k, s, random_independent(ctx, n, rng));
        const auto msg = random_vector(ctx, k, rng);
        const std::size_t e = i % (t + 1);
        auto word = encode(code, msg);
        const auto err = random_rank_error(ctx, n, e, rng);
        for (std::size_t j = 0; j < n; ++j) word[j] = ctx.add(word[j], err[j]);
        const auto dec = decode(code, word);
        const bool ok = dec && dec->message == msg && dec->error_rank == e;
        return TrialOutcome{ok, false, {static_cast<int>(e), 0}};
      },
      exec);

  auto report = report_from("roundtrip",
                            {{"q", q}, {"m", m}, {"n", n}, {"k", k}, {"s", s}, {"t", static_cast<long long>(t)}},
                            tally, seed);
  set_fixed_formula(report, BigRational(1));
  return report;
}

}  // namespace rankfuzz
