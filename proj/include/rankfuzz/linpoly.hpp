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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankfuzz/field.hpp"

namespace rankfuzz {

/// True when s is an admissible twist for F_{q^m}: 1 <= s < m with
/// gcd(s, m) = 1, or s = 1 when m = 1.
bool valid_twist(unsigned s, unsigned m) noexcept;

/// A sigma-linearized polynomial sum_i c_i x^(q^(s i)) over F_{q^m}.
///
/// Coefficients are kept normalized: no trailing zeros, and indices folded
/// modulo m since x^(q^(s m)) = x on F_{q^m}. The polynomial doubles as the
/// F_q-linear map it induces.
class LinearizedPoly {
 public:
  LinearizedPoly(ExtField ctx, unsigned s, std::vector<Felem> coeffs = {});

  /// c x^(q^(s i))
  static LinearizedPoly monomial(ExtField ctx, unsigned s, const Felem& c, unsigned i);
  /// The identity map x.
  static LinearizedPoly identity(ExtField ctx, unsigned s);

  const ExtField& field() const noexcept { return ctx_; }
  unsigned twist() const noexcept { return s_; }
  std::span<const Felem> coeffs() const noexcept { return coeffs_; }
  /// Zero beyond the stored range.
  Felem coeff(std::size_t i) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Sigma-degree, -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) {
    return a.ctx_ == b.ctx_ && a.s_ == b.s_ && a.coeffs_ == b.coeffs_;
  }

 private:
  ExtField ctx_;
  unsigned s_;
  std::vector<Felem> coeffs_;
};

Felem lp_eval(const LinearizedPoly& f, const Felem& a);

/// f evaluated at every element, indexed by ExtField::index_of. Uses
/// linearity, so the cost is one addition per element.
std::vector<Felem> lp_eval_all(const LinearizedPoly& f);

LinearizedPoly lp_add(const LinearizedPoly& f, const LinearizedPoly& g);
LinearizedPoly lp_sub(const LinearizedPoly& f, const LinearizedPoly& g);
LinearizedPoly lp_scale(const Felem& c, const LinearizedPoly& f);

/// The polynomial of x -> f(g(x)).
LinearizedPoly lp_compose(const LinearizedPoly& f, const LinearizedPoly& g);

enum class Side { Left, Right };

struct Division {
  LinearizedPoly quotient;
  LinearizedPoly remainder;
};

/// Right: f = quotient o g + remainder. Left: f = g o quotient + remainder.
/// deg(remainder) < deg(g) in both cases.
Division lp_divide(const LinearizedPoly& f, const LinearizedPoly& g, Side side);

using FelemMatrix = std::vector<std::vector<Felem>>;

/// k x n matrix with entry (i, j) = points[j]^(q^(s i)).
FelemMatrix moore_matrix(const ExtField& ctx, unsigned s, std::size_t k,
                         std::span<const Felem> points);

/// The unique f of sigma-degree < n with f(xs[i]) = ys[i]; xs must be
/// F_q-independent.
LinearizedPoly lp_interpolate(const ExtField& ctx, std::span<const Felem> xs,
                              std::span<const Felem> ys, unsigned s);

/// Rank of the F_q-linear map f, optionally restricted to the span of an
/// independent set. Without a restriction the polynomial basis is used.
std::size_t lp_map_rank(const LinearizedPoly& f,
                        std::optional<std::span<const Felem>> restriction = std::nullopt);

/// "(i, hex)" pairs of the nonzero coefficients, ascending i.
std::string lp_to_text(const LinearizedPoly& f);

}  // namespace rankfuzz
