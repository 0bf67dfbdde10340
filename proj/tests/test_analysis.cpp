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

#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "rankfuzz/analysis.hpp"
#include "rankfuzz/io.hpp"
#include "rankfuzz/trials.hpp"
#include "test_support.hpp"

using namespace rankfuzz;
using rankfuzz::testing::F4;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

// Probability that `count` independent uniform nonzero elements of F_{q^m},
// added to a fixed independent set of size `base`, keep the whole set
// independent. Computed by enumerating every tuple.
BigRational extension_fraction(unsigned q, unsigned m, unsigned base, unsigned count) {
  const ExtField ctx(q, m);
  std::vector<Felem> fixed;
  for (unsigned i = 0; i < base; ++i) fixed.push_back(ctx.basis(i));
  const std::uint64_t nz = ctx.size() - 1;
  std::uint64_t total = 1;
  for (unsigned i = 0; i < count; ++i) total *= nz;
  BigInt good = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<Felem> set = fixed;
    std::uint64_t rest = code;
    for (unsigned i = 0; i < count; ++i) {
      set.push_back(ctx.element(1 + rest % nz));
      rest /= nz;
    }
    if (is_independent(ctx, set)) good += 1;
  }
  return BigRational(good, BigInt(total));
}

struct Instance {
  VaultParams params;
  ExtField ctx;
  FeatureSet a;
  SecretKey key;
  LinearizedPoly kappa;
  Vault vault;
};

Instance instance(const VaultParams& p, Rng& rng) {
  const ExtField ctx = p.field();
  FeatureSet a(ctx, random_independent(ctx, p.n, rng));
  SecretKey key{random_vector(ctx, p.ell, rng)};
  auto kappa = key_poly(p, key);
  Vault v = lock(p, a, key, rng);
  return Instance{p, ctx, std::move(a), std::move(key), std::move(kappa), std::move(v)};
}

}  // namespace

TEST_CASE("set_difference") {
  const F4 f;
  const std::vector<Felem> a{f.one, f.w};
  CHECK(set_difference(a, a) == 0);
  CHECK(set_difference(a, std::vector<Felem>{f.one, f.w1}) == 2);
  const ExtField ctx(2, 8);
  Rng rng(1);
  const auto aa = random_independent(ctx, 8, rng);
  const auto w = sample_witness_overlap(ctx, aa, 5, rng);
  CHECK(set_difference(aa, w) == 6);
}

TEST_CASE("subspace_distance") {
  const F4 f;
  const std::vector<Felem> a{f.one};
  CHECK(subspace_distance(f.ctx, a, a) == 0);
  CHECK(subspace_distance(f.ctx, a, std::vector<Felem>{f.w}) == 2);
  const ExtField f8(2, 3);
  const Felem alpha = f8.basis(1);
  CHECK(subspace_distance(f8, std::vector<Felem>{f8.one(), alpha},
                          std::vector<Felem>{f8.one(), f8.mul(alpha, alpha)}) == 2);
  // spanning sets need not be independent
  CHECK(subspace_distance(f8, std::vector<Felem>{f8.one(), alpha, f8.add(f8.one(), alpha)},
                          std::vector<Felem>{alpha, f8.one()}) == 0);

  SUBCASE("intersection agrees with brute force") {
    const ExtField ctx(2, 5);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      const auto x = random_vector(ctx, 1 + rng.below(4), rng);
      const auto y = random_vector(ctx, 1 + rng.below(4), rng);
      // enumerate <x> and count members of <y>
      auto span_of = [&](const std::vector<Felem>& v) {
        std::set<std::uint64_t> s;
        for (std::uint64_t mask = 0; mask < (1u << v.size()); ++mask) {
          Felem acc = ctx.zero();
          for (std::size_t j = 0; j < v.size(); ++j)
            if (mask >> j & 1) acc = ctx.add(acc, v[j]);
          s.insert(ctx.index_of(acc));
        }
        return s;
      };
      const auto sx = span_of(x), sy = span_of(y);
      std::size_t common = 0;
      for (auto e : sx) common += sy.count(e);
      const auto basis = intersection_basis(ctx, x, y);
      CHECK(common == (1u << basis.size()));
      CHECK(is_independent(ctx, basis));
      std::size_t dx = 0, dy = 0;
      while ((1u << dx) < sx.size()) ++dx;
      while ((1u << dy) < sy.size()) ++dy;
      CHECK(subspace_distance(ctx, x, y) == dx + dy - 2 * basis.size());
    }
  }
}

TEST_CASE("closed forms") {
  CHECK(prob_prop_delta(2, 2, 2) == 1);
  CHECK(prob_prop_delta(2, 2, 1) == 1);
  CHECK(prob_prop_delta(2, 2, 0) == BigRational(2, 3));
  CHECK(prob_prop_deltam(2, 3, 2, 1, 1) == 1);
  CHECK(prob_prop_deltam(2, 3, 2, 0, 1) == BigRational(6, 7));
  CHECK(prob_prop_deltam(2, 4, 3, 1, 3) == BigRational(14, 15));
  CHECK(code_of([] { (void)prob_prop_delta(2, 2, 3); }) == ErrorCode::BadRange);
  CHECK(code_of([] { (void)prob_prop_deltam(2, 4, 3, 2, 1); }) == ErrorCode::BadRange);
  CHECK(code_of([] { (void)prob_prop_deltam(2, 2, 3, 0, 1); }) == ErrorCode::BadRange);

  SUBCASE("match tuple enumeration") {
    // n - u nonzero differences on top of nothing
    for (auto [q, n, u] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{
             {2, 2, 0}, {2, 3, 0}, {2, 3, 1}, {2, 4, 0}, {2, 4, 2}, {3, 2, 0}, {3, 3, 0}, {5, 2, 0}}) {
      CAPTURE(q);
      CAPTURE(n);
      CAPTURE(u);
      CHECK(prob_prop_delta(q, n, u) == extension_fraction(q, n, 0, n - u));
    }
    // v - u nonzero differences on top of an (n - v)-dimensional part
    for (auto [q, m, n, u, v] : std::vector<std::tuple<unsigned, unsigned, unsigned, unsigned, unsigned>>{
             {2, 3, 2, 0, 1}, {2, 4, 3, 1, 3}, {2, 4, 3, 0, 2}, {2, 5, 3, 0, 3}, {3, 3, 2, 0, 2}, {2, 6, 4, 1, 3}}) {
      CAPTURE(m);
      CAPTURE(n);
      CAPTURE(u);
      CAPTURE(v);
      CHECK(prob_prop_deltam(q, m, n, u, v) == extension_fraction(q, m, n - v, v - u));
    }
  }
}

TEST_CASE("witness samplers produce the requested shape") {
  const ExtField ctx(2, 7);
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_independent(ctx, 4, rng);
    const unsigned u = static_cast<unsigned>(rng.below(5));
    const auto w = sample_witness_overlap(ctx, a, u, rng);
    CHECK(is_independent(ctx, w));
    CHECK(set_difference(a, w) == 8 - 2 * u);

    const unsigned v = u + static_cast<unsigned>(rng.below(5 - u));
    if (4 - v > 3) {
      CHECK(code_of([&] { (void)sample_witness_shape(ctx, a, u, v, rng); }) == ErrorCode::InfeasibleShape);
      continue;
    }
    const auto ws = sample_witness_shape(ctx, a, u, v, rng);
    CHECK(is_independent(ctx, ws));
    CHECK(set_difference(a, ws) == 8 - 2 * u);
    CHECK(intersection_basis(ctx, a, ws).size() == v);
  }
}

TEST_CASE("build_lz_basic") {
  Rng rng(3);
  const VaultParams p{2, 6, 6, 2, 1};
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = instance(p, rng);
    const unsigned u = static_cast<unsigned>(trial % 7);
    const FeatureSet w(inst.ctx, sample_witness_overlap(inst.ctx, inst.a.elems(), u, rng));
    const auto lz = build_lz_basic(inst.vault, w);
    for (const auto& x : w.elems()) CHECK(lp_eval(lz, x) == inst.vault.lookup(x));
    CHECK(lp_map_rank(lp_sub(inst.kappa, lz)) <= 6 - u);
    if (u == 6) CHECK(lz == inst.kappa);
    ++checked;
  }
  CHECK(checked == 1000);
  const auto inst = instance(VaultParams{2, 7, 6, 2, 1}, rng);
  CHECK(code_of([&] { (void)build_lz_basic(inst.vault, inst.a); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("build_lz_generalized and the inequality chain") {
  Rng rng(4);
  const VaultParams p{2, 7, 4, 1, 1};
  const ExtField ctx = p.field();
  const Felem alpha = find_normal_element(ctx);

  SUBCASE("W = A adds nothing") {
    const auto inst = instance(p, rng);
    const auto map = build_lz_generalized(inst.vault, inst.a, inst.a, inst.kappa, alpha);
    CHECK(map.basis().size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(map.images()[i] == lp_eval(inst.kappa, map.basis()[i]));
  }
  SUBCASE("not normal") {
    const auto inst = instance(p, rng);
    CHECK(code_of([&] { (void)build_lz_generalized(inst.vault, inst.a, inst.a, inst.kappa, ctx.one()); }) ==
          ErrorCode::NotNormal);
  }
  SUBCASE("chain on random instances") {
    for (int trial = 0; trial < 1000; ++trial) {
      const auto inst = instance(p, rng);
      // m - n = 3 leaves room for at most 3 witness elements outside <A>
      const unsigned v = 1 + static_cast<unsigned>(rng.below(4));
      const unsigned u = static_cast<unsigned>(rng.below(v + 1));
      const FeatureSet w(ctx, sample_witness_shape(ctx, inst.a.elems(), u, v, rng));
      const auto map = build_lz_generalized(inst.vault, w, inst.a, inst.kappa, alpha);

      // basis = W followed by the added g_i; images follow the stated rule
      REQUIRE(map.basis().size() == 4 + (4 - v));
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(map.basis()[i] == w.elems()[i]);
        CHECK(map.images()[i] == inst.vault.lookup(w.elems()[i]));
      }
      for (std::size_t i = 4; i < map.basis().size(); ++i) {
        const auto& g = map.basis()[i];
        const auto pos = std::find(inst.a.elems().begin(), inst.a.elems().end(), g) - inst.a.elems().begin();
        REQUIRE(pos < 4);
        CHECK(map.images()[i] == ctx.add(lp_eval(inst.kappa, g), ctx.frobenius(alpha, pos + 1)));
      }

      const std::size_t d_s = subspace_distance(ctx, inst.a.elems(), w.elems());
      const std::size_t d_r = difference_rank(inst.kappa, map, inst.a.elems());
      const auto meet = intersection_basis(ctx, inst.a.elems(), w.elems());
      const std::size_t d_meet = difference_rank(inst.kappa, map, meet);
      const std::size_t d_delta = set_difference(inst.a.elems(), w.elems());
      CHECK(d_s <= 2 * d_r);
      CHECK(2 * d_r <= d_s + 2 * d_meet);
      CHECK(d_s + 2 * d_meet <= d_delta);
    }
  }
}

TEST_CASE("trial runners agree") {
  const TrialKernel kernel = [](std::uint64_t i) {
    Rng rng(derive_seed(5, i));
    return TrialOutcome{rng.below(3) == 0, false, {static_cast<int>(i % 4), 0}};
  };
  const Tally serial = run_trials_serial(5000, kernel);
  const Tally parallel = run_trials_parallel(5000, kernel);
  CHECK(serial == parallel);
  CHECK(serial.trials == 5000);
  CHECK(serial.strata.size() == 4);

  Tally a = run_trials_serial(10, kernel), b = run_trials_serial(10, kernel), c = run_trials_serial(10, kernel);
  Tally ab = a;
  ab.merge(b);
  ab.merge(c);
  Tally bc = b;
  bc.merge(c);
  Tally a_bc = a;
  a_bc.merge(bc);
  CHECK(ab == a_bc);

  const TrialKernel throwing = [](std::uint64_t i) -> TrialOutcome {
    if (i == 7 || i == 40) throw Error(ErrorCode::InfeasibleShape, "trial " + std::to_string(i));
    return {};
  };
  for (auto runner : {run_trials_serial, run_trials_parallel}) {
    try {
      (void)runner(100, throwing);
      FAIL("expected a throw");
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "trial 7");
    }
  }
}

TEST_CASE("experiments") {
  SUBCASE("lemma2 exhaustive") {
    const auto r = mc_lemma2(2, 2, 2, 1, 0);
    CHECK(r.exhaustive);
    CHECK(r.trials == 6);
    CHECK(r.successes == 3);
    CHECK(r.verdict() == Verdict::ExactMatch);
    const auto r3 = mc_lemma2(2, 3, 2, 1, 0);
    CHECK(r3.successes * 4 == r3.trials * 3);
    const auto one = mc_lemma2(3, 3, 1, 1, 0);
    CHECK(one.formula == BigRational(26, 27));
    CHECK(one.verdict() == Verdict::ExactMatch);
    CHECK(code_of([] { (void)mc_lemma2(2, 2, 3, 1, 0); }) == ErrorCode::BadDimensions);
  }
  SUBCASE("lemma2 sampled") {
    const auto r = mc_lemma2(2, 8, 8, 2000, 42);
    CHECK_FALSE(r.exhaustive);
    CHECK(r.verdict() != Verdict::Failed);
  }
  SUBCASE("prop2 with W = A") {
    const auto r = mc_prop_delta(2, 6, 6, 2, 1, 50, 1);
    CHECK(r.successes == 50);
    CHECK(r.violations == 0);
    CHECK(r.verdict() == Verdict::Within3Sigma);
  }
  SUBCASE("prop4 with u = v = n") {
    const auto r = mc_prop_deltam(2, 6, 4, 4, 4, 1, 1, 50, 1);
    CHECK(r.successes == 50);
    CHECK(code_of([] { (void)mc_prop_deltam(2, 6, 4, 0, 0, 1, 1, 10, 1); }) == ErrorCode::InfeasibleShape);
    CHECK(code_of([] { (void)mc_prop_deltam(2, 6, 4, 3, 2, 1, 1, 10, 1); }) == ErrorCode::BadRange);
  }
  SUBCASE("bad ranges") {
    CHECK(code_of([] { (void)mc_prop_delta(2, 6, 7, 2, 1, 10, 1); }) == ErrorCode::BadRange);
    CHECK(code_of([] { (void)mc_prop_delta(2, 6, 3, 2, 1, 0, 1); }) == ErrorCode::BadRange);
    CHECK(code_of([] {
            (void)mc_unconditional(Scheme::Basic, 2, 4, 4, 1, 1, WitnessDistribution::UniformOverlap, 0, 1);
          }) == ErrorCode::BadRange);
  }
  SUBCASE("unconditional mixture") {
    const auto r = mc_unconditional(Scheme::Generalized, 2, 6, 4, 1, 1, WitnessDistribution::UniformSet, 300, 9);
    CHECK(r.claim == "thm5");
    CHECK(r.violations == 0);
    CHECK(r.formula > 0);
    CHECK(r.formula <= 1);
  }
  SUBCASE("serial and parallel reports are identical") {
    const auto s = io::to_text(io::report_to_json(mc_prop_delta(2, 5, 1, 2, 1, 300, 7, Exec::Serial)));
    const auto p = io::to_text(io::report_to_json(mc_prop_delta(2, 5, 1, 2, 1, 300, 7, Exec::Parallel)));
    CHECK(s == p);
    const auto s2 = io::to_text(io::report_to_json(
        mc_unconditional(Scheme::Basic, 3, 3, 3, 1, 1, WitnessDistribution::UniformOverlap, 200, 3, Exec::Serial)));
    const auto p2 = io::to_text(io::report_to_json(
        mc_unconditional(Scheme::Basic, 3, 3, 3, 1, 1, WitnessDistribution::UniformOverlap, 200, 3, Exec::Parallel)));
    CHECK(s2 == p2);
  }
  SUBCASE("roundtrip") {
    const auto r = mc_roundtrip(2, 6, 6, 2, 1, 100, 5);
    CHECK(r.successes == 100);
  }
}

TEST_CASE("verdicts") {
  TrialReport r;
  r.trials = 100;
  r.successes = 50;
  r.formula = BigRational(1, 2);
  r.exhaustive = true;
  CHECK(r.verdict() == Verdict::ExactMatch);
  r.successes = 51;
  CHECK(r.verdict() == Verdict::Failed);
  r.exhaustive = false;
  r.standard_error = 0.05;
  CHECK(r.verdict() == Verdict::Within3Sigma);
  r.successes = 68;  // 3.6 sigma
  CHECK(r.verdict() == Verdict::Flagged);
  r.successes = 71;  // 4.2 sigma
  CHECK(r.verdict() == Verdict::Failed);
  r.successes = 50;
  r.violations = 1;
  CHECK(r.verdict() == Verdict::Failed);
  CHECK(verdict_name(Verdict::Within3Sigma) == "within_3sigma");
  CHECK(verdict_name(Verdict::ExactMatch) == "exact_match");
}
