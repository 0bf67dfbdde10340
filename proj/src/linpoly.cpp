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

#include "rankfuzz/linpoly.hpp"

#include <numeric>
#include <sstream>

#include "rankfuzz/codec.hpp"
#include "rankfuzz/linalg.hpp"

namespace rankfuzz {

bool valid_twist(unsigned s, unsigned m) noexcept {
  if (m == 1) return s == 1;
  return s >= 1 && s < m && std::gcd(s, m) == 1;
}

LinearizedPoly::LinearizedPoly(ExtField ctx, unsigned s, std::vector<Felem> coeffs)
    : ctx_(std::move(ctx)), s_(s) {
  if (!valid_twist(s, ctx_.m()))
    throw Error(ErrorCode::BadTwist, "twist " + std::to_string(s) + " is not coprime to m = " +
                                         std::to_string(ctx_.m()) + " or out of range");
  ctx_.check(coeffs);
  const std::size_t m = ctx_.m();
  if (coeffs.size() > m) {
    for (std::size_t i = m; i < coeffs.size(); ++i)
      coeffs[i % m] = ctx_.add(coeffs[i % m], coeffs[i]);
    coeffs.resize(m);
  }
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  coeffs_ = std::move(coeffs);
}

LinearizedPoly LinearizedPoly::monomial(ExtField ctx, unsigned s, const Felem& c, unsigned i) {
  std::vector<Felem> coeffs(i + 1, ctx.zero());
  coeffs[i] = c;
  return LinearizedPoly(std::move(ctx), s, std::move(coeffs));
}

LinearizedPoly LinearizedPoly::identity(ExtField ctx, unsigned s) {
  auto one = ctx.one();
  return monomial(std::move(ctx), s, one, 0);
}

Felem LinearizedPoly::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : ctx_.zero();
}

namespace {

void check_compatible(const LinearizedPoly& f, const LinearizedPoly& g) {
  if (!(f.field() == g.field()))
    throw Error(ErrorCode::MismatchedField, "linearized polynomials over different fields");
  if (f.twist() != g.twist())
    throw Error(ErrorCode::TwistMismatch, "linearized polynomials with different twists");
}

// sigma^i(a) = a^(q^(s i))
Felem sigma(const ExtField& ctx, unsigned s, const Felem& a, long long i) {
  return ctx.frobenius(a, static_cast<long long>(s) * i);
}

}  // namespace

Felem lp_eval(const LinearizedPoly& f, const Felem& a) {
  const auto& ctx = f.field();
  ctx.check(a);
  Felem acc = ctx.zero();
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    acc = ctx.add(acc, ctx.mul(c[i], sigma(ctx, f.twist(), a, static_cast<long long>(i))));
  }
  return acc;
}

std::vector<Felem> lp_eval_all(const LinearizedPoly& f) {
  const auto& ctx = f.field();
  const std::uint64_t size = ctx.size();
  const unsigned q = ctx.q();
  const unsigned m = ctx.m();

  std::vector<Felem> images(m);
  std::vector<std::uint64_t> place(m);
  for (unsigned j = 0; j < m; ++j) {
    images[j] = lp_eval(f, ctx.basis(j));
    place[j] = j == 0 ? 1 : place[j - 1] * q;
  }
  // table[idx] = table[idx - q^j] + f(x^j), j the lowest nonzero digit of idx
  std::vector<Felem> table(size, ctx.zero());
  for (std::uint64_t idx = 1; idx < size; ++idx) {
    unsigned j = 0;
    while ((idx / place[j]) % q == 0) ++j;
    table[idx] = ctx.add(table[idx - place[j]], images[j]);
  }
  return table;
}

LinearizedPoly lp_add(const LinearizedPoly& f, const LinearizedPoly& g) {
  check_compatible(f, g);
  const auto& ctx = f.field();
  const std::size_t n = std::max(f.coeffs().size(), g.coeffs().size());
  std::vector<Felem> c(n, ctx.zero());
  for (std::size_t i = 0; i < n; ++i) c[i] = ctx.add(f.coeff(i), g.coeff(i));
  return LinearizedPoly(ctx, f.twist(), std::move(c));
}

LinearizedPoly lp_sub(const LinearizedPoly& f, const LinearizedPoly& g) {
  check_compatible(f, g);
  const auto& ctx = f.field();
  const std::size_t n = std::max(f.coeffs().size(), g.coeffs().size());
  std::vector<Felem> c(n, ctx.zero());
  for (std::size_t i = 0; i < n; ++i) c[i] = ctx.sub(f.coeff(i), g.coeff(i));
  return LinearizedPoly(ctx, f.twist(), std::move(c));
}

LinearizedPoly lp_scale(const Felem& c, const LinearizedPoly& f) {
  const auto& ctx = f.field();
  std::vector<Felem> out;
  out.reserve(f.coeffs().size());
  for (const auto& x : f.coeffs()) out.push_back(ctx.mul(c, x));
  return LinearizedPoly(ctx, f.twist(), std::move(out));
}

LinearizedPoly lp_compose(const LinearizedPoly& f, const LinearizedPoly& g) {
  check_compatible(f, g);
  const auto& ctx = f.field();
  if (f.is_zero() || g.is_zero()) return LinearizedPoly(ctx, f.twist());
  const std::size_t m = ctx.m();
  const auto fc = f.coeffs();
  const auto gc = g.coeffs();
  std::vector<Felem> out(std::min(fc.size() + gc.size() - 1, m), ctx.zero());
  for (std::size_t i = 0; i < fc.size(); ++i) {
    if (fc[i].is_zero()) continue;
    for (std::size_t j = 0; j < gc.size(); ++j) {
      const Felem term =
          ctx.mul(fc[i], sigma(ctx, f.twist(), gc[j], static_cast<long long>(i)));
      auto& slot = out[(i + j) % m];
      slot = ctx.add(slot, term);
    }
  }
  return LinearizedPoly(ctx, f.twist(), std::move(out));
}

Division lp_divide(const LinearizedPoly& f, const LinearizedPoly& g, Side side) {
  check_compatible(f, g);
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "division by the zero polynomial");
  const auto& ctx = f.field();
  const unsigned s = f.twist();
  const int db = g.degree();
  const Felem lead_inv = ctx.inv(g.coeff(static_cast<std::size_t>(db)));

  std::vector<Felem> quot;
  LinearizedPoly rem = f;
  // Degrees stay below m, so no folding happens inside the loop.
  while (rem.degree() >= db) {
    const int d = rem.degree() - db;
    const Felem lead = rem.coeff(static_cast<std::size_t>(rem.degree()));
    Felem c;
    LinearizedPoly term(ctx, s);
    if (side == Side::Right) {
      // (c x^[d]) o g has leading coefficient c * sigma^d(g_lead)
      c = ctx.div(lead, sigma(ctx, s, g.coeff(static_cast<std::size_t>(db)), d));
      term = lp_compose(LinearizedPoly::monomial(ctx, s, c, static_cast<unsigned>(d)), g);
    } else {
      // g o (c x^[d]) has leading coefficient g_lead * sigma^db(c)
      c = sigma(ctx, s, ctx.mul(lead, lead_inv), -db);
      term = lp_compose(g, LinearizedPoly::monomial(ctx, s, c, static_cast<unsigned>(d)));
    }
    if (quot.size() <= static_cast<std::size_t>(d)) quot.resize(static_cast<std::size_t>(d) + 1, ctx.zero());
    quot[static_cast<std::size_t>(d)] = ctx.add(quot[static_cast<std::size_t>(d)], c);
    rem = lp_sub(rem, term);
  }
  return Division{LinearizedPoly(ctx, s, std::move(quot)), std::move(rem)};
}

FelemMatrix moore_matrix(const ExtField& ctx, unsigned s, std::size_t k,
                         std::span<const Felem> points) {
  if (k < 1 || points.empty())
    throw Error(ErrorCode::BadDimensions, "Moore matrix needs k >= 1 and at least one point");
  ctx.check(points);
  FelemMatrix out(k, std::vector<Felem>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    out[0][j] = points[j];
    for (std::size_t i = 1; i < k; ++i) out[i][j] = ctx.frobenius(out[i - 1][j], s);
  }
  return out;
}

LinearizedPoly lp_interpolate(const ExtField& ctx, std::span<const Felem> xs,
                              std::span<const Felem> ys, unsigned s) {
  if (xs.size() != ys.size())
    throw Error(ErrorCode::LengthMismatch, "interpolation needs as many values as points");
  ctx.check(ys);
  if (!is_independent(ctx, xs))
    throw Error(ErrorCode::DependentPoints, "interpolation points are F_q-dependent");
  if (xs.empty()) return LinearizedPoly(ctx, s);
  const std::size_t n = xs.size();
  // Row i: sum_j f_j xs_i^[s j] = ys_i
  const auto moore = moore_matrix(ctx, s, n, xs);
  linalg::Rows<Felem> rows(n, std::vector<Felem>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = moore[j][i];
  auto sol = linalg::solve(linalg::ExtOps{ctx}, std::move(rows), n,
                           std::vector<Felem>(ys.begin(), ys.end()));
  // An independent point set makes the Moore matrix invertible.
  if (!sol.particular || !sol.kernel.empty())
    throw Error(ErrorCode::DependentPoints, "Moore system is singular");
  return LinearizedPoly(ctx, s, std::move(*sol.particular));
}

std::size_t lp_map_rank(const LinearizedPoly& f,
                        std::optional<std::span<const Felem>> restriction) {
  const auto& ctx = f.field();
  std::vector<Felem> basis;
  if (restriction) {
    ctx.check(*restriction);
    if (!is_independent(ctx, *restriction))
      throw Error(ErrorCode::DependentRestriction, "restriction vectors are F_q-dependent");
    basis.assign(restriction->begin(), restriction->end());
  } else {
    for (unsigned j = 0; j < ctx.m(); ++j) basis.push_back(ctx.basis(j));
  }
  if (basis.empty()) return 0;
  std::vector<Felem> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(lp_eval(f, b));
  return span_rank(ctx, images);
}

std::string lp_to_text(const LinearizedPoly& f) {
  std::ostringstream os;
  os << '[';
  bool first = true;
  const auto c = f.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (!first) os << ", ";
    os << '(' << i << ", " << codec::element_hex(c[i]) << ')';
    first = false;
  }
  os << ']';
  return os.str();
}

}  // namespace rankfuzz
