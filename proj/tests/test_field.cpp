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

#include <functional>
#include <numeric>

#include "rankfuzz/codec.hpp"
#include "rankfuzz/field.hpp"
#include "rankfuzz/random.hpp"
#include "test_support.hpp"

using namespace rankfuzz;
using rankfuzz::testing::F4;
using rankfuzz::testing::make;

namespace {

// --- oracles ---------------------------------------------------------------

using IPoly = std::vector<int>;

IPoly poly_mod(IPoly a, const IPoly& b, int q) {
  // b monic
  while (a.size() >= b.size()) {
    const int c = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % q + q) % q;
    a.pop_back();
  }
  return a;
}

// Irreducible iff no monic divisor of degree 1..deg/2 (trial division).
bool irreducible_by_trial_division(const IPoly& f, int q) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    IPoly g(static_cast<std::size_t>(d) + 1, 0);
    g[static_cast<std::size_t>(d)] = 1;
    while (true) {
      const IPoly r = poly_mod(f, g, q);
      if (std::all_of(r.begin(), r.end(), [](int x) { return x == 0; })) return false;
      int i = 0;
      while (i < d && ++g[static_cast<std::size_t>(i)] == q) g[static_cast<std::size_t>(i++)] = 0;
      if (i == d) break;
    }
  }
  return true;
}

IPoly smallest_irreducible(int q, int m) {
  IPoly f(static_cast<std::size_t>(m) + 1, 0);
  f[static_cast<std::size_t>(m)] = 1;
  while (!irreducible_by_trial_division(f, q)) {
    int i = 0;
    while (++f[static_cast<std::size_t>(i)] == q) f[static_cast<std::size_t>(i++)] = 0;
  }
  return f;
}

// Naive product in F_q[x]/(f).
Felem naive_mul(const ExtField& ctx, const Felem& a, const Felem& b) {
  const int q = static_cast<int>(ctx.q());
  IPoly prod(2 * ctx.m(), 0);
  for (unsigned i = 0; i < ctx.m(); ++i)
    for (unsigned j = 0; j < ctx.m(); ++j) prod[i + j] = (prod[i + j] + a.digit(i) * b.digit(j)) % q;
  const IPoly f(ctx.modulus().begin(), ctx.modulus().end());
  IPoly r = poly_mod(prod, f, q);
  r.resize(ctx.m(), 0);
  std::vector<std::uint8_t> d(r.begin(), r.end());
  return ctx.from_digits(d);
}

int det_mod(std::vector<std::vector<int>> a, int q) {
  // Laplace expansion; matrices here are at most 3x3.
  const std::size_t n = a.size();
  if (n == 1) return a[0][0] % q;
  int total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<int>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const int sign = c % 2 == 0 ? 1 : q - 1;
    total = (total + sign * a[0][c] % q * det_mod(minor, q)) % q;
  }
  return total;
}

// Largest k with a nonzero k x k minor.
std::size_t rank_by_minors(const MatFq& mat) {
  const int q = static_cast<int>(mat.q());
  for (std::size_t k = std::min(mat.rows(), mat.cols()); k > 0; --k) {
    std::vector<bool> rsel(mat.rows(), false), csel(mat.cols(), false);
    std::fill(rsel.end() - static_cast<long>(k), rsel.end(), true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.end() - static_cast<long>(k), csel.end(), true);
      do {
        std::vector<std::vector<int>> sub;
        for (std::size_t r = 0; r < mat.rows(); ++r) {
          if (!rsel[r]) continue;
          std::vector<int> row;
          for (std::size_t c = 0; c < mat.cols(); ++c)
            if (csel[c]) row.push_back(mat.at(r, c));
          sub.push_back(row);
        }
        if (det_mod(sub, q) != 0) return k;
      } while (std::next_permutation(csel.begin(), csel.end()));
    } while (std::next_permutation(rsel.begin(), rsel.end()));
  }
  return 0;
}

}  // namespace

TEST_CASE("ext_field_new picks the smallest irreducible modulus") {
  SUBCASE("base field") {
    const ExtField f(2, 1);
    CHECK(std::vector<std::uint8_t>(f.modulus().begin(), f.modulus().end()) ==
          std::vector<std::uint8_t>{0, 1});
    CHECK(f.mul(f.one(), f.one()) == f.one());
  }
  SUBCASE("F_4 and F_8") {
    const ExtField f4(2, 2);
    CHECK(std::vector<std::uint8_t>(f4.modulus().begin(), f4.modulus().end()) ==
          std::vector<std::uint8_t>{1, 1, 1});
    const ExtField f8(2, 3);
    CHECK(std::vector<std::uint8_t>(f8.modulus().begin(), f8.modulus().end()) ==
          std::vector<std::uint8_t>{1, 1, 0, 1});
  }
  SUBCASE("agrees with trial division") {
    const std::vector<std::pair<int, int>> cases{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
                                                 {2, 7}, {2, 8}, {2, 10}, {3, 2}, {3, 3}, {3, 4},
                                                 {3, 5}, {5, 2}, {5, 3}, {7, 2}, {251, 1}, {251, 2}};
    for (const auto& [q, m] : cases) {
      CAPTURE(q);
      CAPTURE(m);
      const ExtField f(static_cast<unsigned>(q), static_cast<unsigned>(m));
      const IPoly expected = smallest_irreducible(q, m);
      CHECK(IPoly(f.modulus().begin(), f.modulus().end()) == expected);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(ExtField(4, 2), Error);
    try {
      ExtField(9, 2);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonPrimeQ);
    }
    try {
      ExtField(2, 0);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegreeOutOfRange);
    }
    CHECK_THROWS_AS(ExtField(2, 65), Error);
    CHECK_THROWS_AS(ExtField(257, 1), Error);
  }
  SUBCASE("large degree stays constructible") {
    const ExtField f(2, 64);
    CHECK_FALSE(f.order().has_value());
    Rng rng(3);
    const Felem a = random_nonzero(f, rng);
    CHECK(f.mul(a, f.inv(a)) == f.one());
    CHECK(f.frobenius(a, 64) == a);
  }
}

TEST_CASE("felem_arith over F_4") {
  const F4 f;
  CHECK(f.ctx.add(f.w, f.w) == f.zero);
  CHECK(f.ctx.mul(f.w, f.w) == f.w1);
  CHECK(f.ctx.inv(f.w) == f.w1);
  CHECK(f.ctx.sub(f.one, f.w) == f.w1);
  CHECK(f.ctx.pow(f.w, 3) == f.one);
  CHECK(f.ctx.pow(f.w, 0) == f.one);

  SUBCASE("inverse of zero") {
    try {
      (void)f.ctx.inv(f.zero);
      FAIL("expected DivisionByZero");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DivisionByZero);
    }
  }
  SUBCASE("mismatched field") {
    const ExtField f8(2, 3);
    try {
      (void)f.ctx.add(f.w, f8.one());
      FAIL("expected MismatchedField");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MismatchedField);
    }
    const ExtField f9(3, 2);
    CHECK_THROWS_AS((void)f.ctx.mul(f.one, f9.one()), Error);
  }
}

TEST_CASE("field arithmetic agrees with naive polynomial reduction") {
  for (auto [q, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 3}, {5, 2}, {2, 8}, {7, 3}}) {
    CAPTURE(q);
    CAPTURE(m);
    const ExtField ctx(q, m);
    Rng rng(q * 100 + m);
    for (int i = 0; i < 300; ++i) {
      const Felem a = random_element(ctx, rng);
      const Felem b = random_element(ctx, rng);
      CHECK(ctx.mul(a, b) == naive_mul(ctx, a, b));
      if (!a.is_zero()) CHECK(ctx.mul(a, ctx.inv(a)) == ctx.one());
      CHECK(ctx.sub(ctx.add(a, b), b) == a);
      CHECK(ctx.add(a, ctx.neg(a)) == ctx.zero());
    }
  }
  SUBCASE("every element of a small field is invertible") {
    const ExtField ctx(3, 3);
    for (std::uint64_t i = 1; i < ctx.size(); ++i) {
      const Felem a = ctx.element(i);
      CHECK(ctx.mul(a, ctx.inv(a)) == ctx.one());
      CHECK(ctx.pow(a, ctx.size() - 1) == ctx.one());
    }
  }
}

TEST_CASE("frobenius") {
  const F4 f;
  CHECK(f.ctx.frobenius(f.one, 1) == f.one);
  CHECK(f.ctx.frobenius(f.w, 1) == f.w1);
  CHECK(f.ctx.frobenius(f.w, 2) == f.w);
  CHECK(f.ctx.frobenius(f.w, -1) == f.w1);

  for (auto [q, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {3, 5}, {5, 3}, {2, 8}}) {
    CAPTURE(q);
    CAPTURE(m);
    const ExtField ctx(q, m);
    Rng rng(7 * q + m);
    for (int trial = 0; trial < 1000; ++trial) {
      const Felem a = random_element(ctx, rng);
      const Felem b = random_element(ctx, rng);
      const auto i = static_cast<long long>(rng.below(2 * m));
      CHECK(ctx.frobenius(ctx.add(a, b), i) == ctx.add(ctx.frobenius(a, i), ctx.frobenius(b, i)));
      CHECK(ctx.frobenius(ctx.mul(a, b), i) == ctx.mul(ctx.frobenius(a, i), ctx.frobenius(b, i)));
      CHECK(ctx.frobenius(a, m) == a);
      if (trial < 50) {
        // a^(q^i) by repeated powering
        Felem p = a;
        for (long long j = 0; j < i % m; ++j) p = ctx.pow(p, q);
        CHECK(ctx.frobenius(a, i) == p);
      }
    }
  }
}

TEST_CASE("element enumeration and ordering") {
  const ExtField ctx(3, 3);
  for (std::uint64_t i = 0; i < ctx.size(); ++i) CHECK(ctx.index_of(ctx.element(i)) == i);
  CHECK(index_less(ctx.element(5), ctx.element(6)));
  const F4 f;
  // byte order compares digit 0 first: w = (0,1) sorts before 1 = (1,0)
  CHECK(bytes_less(f.w, f.one));
  CHECK(index_less(f.one, f.w));
  CHECK_THROWS_AS((void)ctx.element(27), Error);
}

TEST_CASE("vec_to_mat") {
  const F4 f;
  const std::vector<Felem> zeros{f.zero, f.zero};
  const MatFq z = vec_to_mat(f.ctx, zeros);
  CHECK(z.rows() == 2);
  CHECK(z.cols() == 2);
  CHECK(std::all_of(z.entries().begin(), z.entries().end(), [](auto x) { return x == 0; }));

  const std::vector<Felem> v{f.one, f.w};
  const MatFq id = vec_to_mat(f.ctx, v);
  CHECK(id.at(0, 0) == 1);
  CHECK(id.at(1, 0) == 0);
  CHECK(id.at(0, 1) == 0);
  CHECK(id.at(1, 1) == 1);

  const ExtField ctx(3, 4);
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto x = random_vector(ctx, 5, rng);
    const auto y = random_vector(ctx, 5, rng);
    CHECK(mat_to_vec(ctx, vec_to_mat(ctx, x)) == x);
    // additivity
    const MatFq mx = vec_to_mat(ctx, x), my = vec_to_mat(ctx, y);
    const MatFq mxy = vec_to_mat(ctx, rankfuzz::testing::add_vectors(ctx, x, y));
    for (std::size_t r = 0; r < mx.rows(); ++r)
      for (std::size_t c = 0; c < mx.cols(); ++c)
        CHECK(mxy.at(r, c) == (mx.at(r, c) + my.at(r, c)) % 3);
  }
}

TEST_CASE("rank_fq") {
  CHECK(rank_fq(MatFq(2, 3, 3)) == 0);
  MatFq id(2, 2, 2);
  id.at(0, 0) = id.at(1, 1) = 1;
  CHECK(rank_fq(id) == 2);
  MatFq m(2, 3, 3);
  const int rows[3][3] = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m.at(r, c) = static_cast<std::uint8_t>(rows[r][c]);
  CHECK(rank_fq(m) == 2);

  SUBCASE("agrees with minors on every matrix up to 3x3 over F_2 and F_3") {
    for (unsigned q : {2u, 3u}) {
      for (std::size_t r = 1; r <= 3; ++r) {
        for (std::size_t c = 1; c <= 3; ++c) {
          std::size_t cells = r * c;
          std::uint64_t total = 1;
          for (std::size_t i = 0; i < cells; ++i) total *= q;
          for (std::uint64_t code = 0; code < total; ++code) {
            MatFq mat(q, r, c);
            std::uint64_t rest = code;
            for (std::size_t i = 0; i < cells; ++i) {
              mat.at(i / c, i % c) = static_cast<std::uint8_t>(rest % q);
              rest /= q;
            }
            REQUIRE(rank_fq(mat) == rank_by_minors(mat));
          }
        }
      }
    }
  }
}

TEST_CASE("rank_distance is a metric") {
  const F4 f;
  const std::vector<Felem> x{f.one, f.w};
  CHECK(rank_distance(f.ctx, x, x) == 0);
  CHECK(rank_distance(f.ctx, x, std::vector<Felem>{f.one, f.w1}) == 1);
  CHECK(rank_distance(f.ctx, x, std::vector<Felem>{f.zero, f.zero}) == 2);
  CHECK_THROWS_AS((void)rank_distance(f.ctx, x, std::vector<Felem>{f.one}), Error);

  const ExtField ctx(2, 5);
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_vector(ctx, 4, rng);
    const auto b = random_vector(ctx, 4, rng);
    const auto c = random_vector(ctx, 4, rng);
    const auto dab = rank_distance(ctx, a, b);
    CHECK(dab == rank_distance(ctx, b, a));
    CHECK((dab == 0) == (a == b));
    CHECK(rank_distance(ctx, a, c) <= dab + rank_distance(ctx, b, c));
  }
}

TEST_CASE("solve_fq") {
  SUBCASE("identity") {
    MatFq a(5, 3, 3);
    for (int i = 0; i < 3; ++i) a.at(i, i) = 1;
    const std::vector<std::uint8_t> b{4, 0, 2};
    const auto sol = solve_fq(a, b);
    REQUIRE(sol.solution);
    CHECK(*sol.solution == b);
    CHECK(sol.kernel.empty());
  }
  SUBCASE("zero matrix") {
    const MatFq a(3, 2, 3);
    const auto sol = solve_fq(a, std::vector<std::uint8_t>{0, 0});
    REQUIRE(sol.solution);
    CHECK(sol.kernel.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      FqVector e(3, 0);
      e[i] = 1;
      CHECK(sol.kernel[i] == e);
    }
  }
  SUBCASE("rank-deficient F_2 system against enumeration") {
    MatFq a(2, 2, 2);
    a.at(0, 0) = a.at(0, 1) = 1;
    const auto sol = solve_fq(a, std::vector<std::uint8_t>{1, 0});
    REQUIRE(sol.solution);
    CHECK(*sol.solution == FqVector{1, 0});
    REQUIRE(sol.kernel.size() == 1);
    CHECK(sol.kernel[0] == FqVector{1, 1});
    // all candidates: exactly (1,0) and (0,1) solve it
    int count = 0;
    for (int x0 = 0; x0 < 2; ++x0)
      for (int x1 = 0; x1 < 2; ++x1) count += ((x0 + x1) % 2 == 1);
    CHECK(count == 2);
  }
  SUBCASE("inconsistent") {
    MatFq a(3, 2, 1);
    a.at(0, 0) = 1;
    a.at(1, 0) = 1;
    const auto sol = solve_fq(a, std::vector<std::uint8_t>{1, 2});
    CHECK_FALSE(sol.solution);
  }
  SUBCASE("dimension mismatch") {
    try {
      (void)solve_fq(MatFq(2, 2, 2), std::vector<std::uint8_t>{1});
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
  }
  SUBCASE("random systems: solutions and kernels check out") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
      const unsigned q = trial % 2 ? 3 : 5;
      MatFq a(q, 1 + rng.below(4), 1 + rng.below(4));
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(r, c) = static_cast<std::uint8_t>(rng.below(q));
      FqVector b(a.rows());
      for (auto& x : b) x = static_cast<std::uint8_t>(rng.below(q));
      const auto sol = solve_fq(a, b);
      CHECK(sol.kernel.size() == a.cols() - rank_fq(a));
      auto apply = [&](const FqVector& x) {
        FqVector out(a.rows(), 0);
        for (std::size_t r = 0; r < a.rows(); ++r)
          for (std::size_t c = 0; c < a.cols(); ++c) out[r] = static_cast<std::uint8_t>((out[r] + a.at(r, c) * x[c]) % q);
        return out;
      };
      for (const auto& k : sol.kernel) CHECK(apply(k) == FqVector(a.rows(), 0));
      if (sol.solution) CHECK(apply(*sol.solution) == b);
    }
  }
}

TEST_CASE("find_normal_element") {
  const ExtField f2(2, 1);
  CHECK(find_normal_element(f2) == f2.one());
  const F4 f;
  CHECK(find_normal_element(f.ctx) == f.w);

  const ExtField f8(2, 3);
  // Exhaustive scan in index order.
  std::optional<Felem> first;
  for (std::uint64_t i = 0; i < 8 && !first; ++i) {
    const Felem a = f8.element(i);
    const std::vector<Felem> conj{a, f8.pow(a, 2), f8.pow(a, 4)};
    if (rank_fq(vec_to_mat(f8, conj)) == 3) first = a;
  }
  REQUIRE(first);
  CHECK(find_normal_element(f8) == *first);

  for (auto [q, m] : std::vector<std::pair<unsigned, unsigned>>{{2, 4}, {2, 5}, {2, 6}, {2, 10}, {3, 4}, {5, 3}, {7, 2}}) {
    CAPTURE(q);
    CAPTURE(m);
    const ExtField ctx(q, m);
    const Felem a = find_normal_element(ctx);
    // first element in index order whose conjugates have full rank
    for (std::uint64_t i = 0;; ++i) {
      const Felem b = ctx.element(i);
      std::vector<Felem> c;
      for (unsigned j = 0; j < m; ++j) c.push_back(ctx.frobenius(b, j));
      if (rank_fq(vec_to_mat(ctx, c)) == m) {
        CHECK(b == a);
        break;
      }
    }
    std::vector<Felem> conj;
    for (unsigned i = 0; i < m; ++i) conj.push_back(ctx.frobenius(a, i));
    CHECK(is_independent(ctx, conj));
  }
}

TEST_CASE("find_normal_element on large fields") {
  for (unsigned m : {32u, 48u, 64u}) {
    const ExtField ctx(2, m);
    const Felem a = find_normal_element(ctx);
    std::vector<Felem> conj;
    for (unsigned i = 0; i < m; ++i) conj.push_back(ctx.frobenius(a, i));
    CHECK(is_independent(ctx, conj));
  }
}

TEST_CASE("canonical serialization") {
  const ExtField ctx(3, 2);
  const Felem a = make(ctx, {2, 1});
  CHECK(codec::element_hex(a) == "0201");
  CHECK(codec::element_from_hex(ctx, "0201") == a);
  CHECK_THROWS_AS((void)codec::element_from_hex(ctx, "0301"), Error);
  CHECK_THROWS_AS((void)codec::element_from_hex(ctx, "02"), Error);
  CHECK_THROWS_AS((void)codec::element_from_hex(ctx, "zz01"), Error);

  const std::vector<Felem> v{a, ctx.one()};
  CHECK(codec::to_hex(codec::vector_bytes(v)) == "02010100");
  // rows = 2, cols = 2, then row-major: row 0 = (2, 1), row 1 = (1, 0)
  CHECK(codec::to_hex(codec::matrix_bytes(vec_to_mat(ctx, v))) == "020000000200000002010100");
}
