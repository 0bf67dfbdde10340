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

#include "rankfuzz/gabidulin.hpp"

#include <algorithm>
#include <string>

#include "rankfuzz/linalg.hpp"

namespace rankfuzz {

GabidulinCode::GabidulinCode(ExtField ctx, std::size_t n, std::size_t k, unsigned s,
                             std::vector<Felem> points)
    : ctx_(std::move(ctx)), n_(n), k_(k), s_(s), points_(std::move(points)) {
  if (k_ < 1 || k_ > n_ || n_ > ctx_.m())
    throw Error(ErrorCode::BadDimensions,
                "need 1 <= k <= n <= m, got n = " + std::to_string(n_) +
                    ", k = " + std::to_string(k_) + ", m = " + std::to_string(ctx_.m()));
  if (!valid_twist(s_, ctx_.m()))
    throw Error(ErrorCode::BadTwist,
                "twist " + std::to_string(s_) + " is not coprime to m = " + std::to_string(ctx_.m()));
  if (points_.size() != n_)
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n_) + " evaluation points");
  ctx_.check(points_);
  if (!is_independent(ctx_, points_))
    throw Error(ErrorCode::DependentPoints, "evaluation points are F_q-dependent");
}

LinearizedPoly GabidulinCode::message_poly(std::span<const Felem> message) const {
  if (message.size() != k_)
    throw Error(ErrorCode::LengthMismatch, "message length " + std::to_string(message.size()) +
                                               ", code dimension " + std::to_string(k_));
  return LinearizedPoly(ctx_, s_, std::vector<Felem>(message.begin(), message.end()));
}

std::vector<Felem> encode(const GabidulinCode& code, std::span<const Felem> message) {
  const auto f = code.message_poly(message);
  std::vector<Felem> out;
  out.reserve(code.length());
  for (const auto& g : code.points()) out.push_back(lp_eval(f, g));
  return out;
}

std::optional<Decoded> decode(const GabidulinCode& code, std::span<const Felem> received) {
  const auto& ctx = code.field();
  const std::size_t n = code.length();
  const std::size_t k = code.dimension();
  const std::size_t t = code.capability();
  const unsigned s = code.twist();
  if (received.size() != n)
    throw Error(ErrorCode::LengthMismatch, "received word has length " +
                                               std::to_string(received.size()) + ", code length " +
                                               std::to_string(n));
  ctx.check(received);

  // Unknowns (Lambda_0..Lambda_t, F_0..F_{t+k-1}) with
  // Lambda(received_i) - F(point_i) = 0 for every position i.
  const std::size_t nl = t + 1;
  const std::size_t nf = t + k;
  const auto pts = code.points();
  linalg::Rows<Felem> rows(n, std::vector<Felem>(nl + nf));
  for (std::size_t i = 0; i < n; ++i) {
    Felem r = received[i];
    for (std::size_t j = 0; j < nl; ++j) {
      rows[i][j] = r;
      r = ctx.frobenius(r, s);
    }
    Felem g = pts[i];
    for (std::size_t j = 0; j < nf; ++j) {
      rows[i][nl + j] = ctx.neg(g);
      g = ctx.frobenius(g, s);
    }
  }
  const auto sol = linalg::solve(linalg::ExtOps{ctx}, std::move(rows), nl + nf, {});
  if (sol.kernel.empty()) return std::nullopt;
  const auto& v = sol.kernel.front();

  LinearizedPoly lambda(ctx, s, std::vector<Felem>(v.begin(), v.begin() + nl));
  LinearizedPoly numer(ctx, s, std::vector<Felem>(v.begin() + nl, v.end()));
  if (lambda.is_zero()) return std::nullopt;

  // numer = lambda o f
  auto [f, rem] = lp_divide(numer, lambda, Side::Left);
  if (!rem.is_zero() || f.degree() >= static_cast<int>(k)) return std::nullopt;

  Decoded out;
  out.message.assign(k, ctx.zero());
  std::copy(f.coeffs().begin(), f.coeffs().end(), out.message.begin());
  out.codeword = encode(code, out.message);
  out.error_rank = rank_distance(ctx, received, out.codeword);
  if (out.error_rank > t) return std::nullopt;
  return out;
}

BigInt singleton_bound(unsigned q, unsigned m, unsigned n, unsigned d) {
  if (d < 1 || d > std::min(n, m))
    throw Error(ErrorCode::BadDistance, "need 1 <= d <= min(n, m), got d = " + std::to_string(d));
  const BigInt base = q;
  return std::min(boost::multiprecision::pow(base, m * (n - d + 1)),
                  boost::multiprecision::pow(base, n * (m - d + 1)));
}

std::size_t min_distance_exhaustive(const GabidulinCode& code) {
  const auto& ctx = code.field();
  const std::size_t k = code.dimension();
  const auto order = ctx.order();
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 20;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k && order && *order <= kLimit && total <= kLimit; ++i)
    total *= *order;
  if (!order || *order > kLimit || total > kLimit)
    throw Error(ErrorCode::TooLarge, "exhaustive search needs q^(mk) <= 2^20");

  const std::vector<Felem> zero(code.length(), ctx.zero());
  std::size_t best = code.length() + 1;
  std::vector<Felem> msg(k);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t j = 0; j < k; ++j) {
      msg[j] = ctx.element(rest % *order);
      rest /= *order;
    }
    best = std::min(best, rank_distance(ctx, encode(code, msg), zero));
  }
  return best;
}

}  // namespace rankfuzz
