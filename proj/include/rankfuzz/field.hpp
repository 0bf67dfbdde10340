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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rankfuzz/error.hpp"

namespace rankfuzz {

inline constexpr unsigned kMaxDegree = 64;
inline constexpr unsigned kMaxPrime = 251;

/// An element of F_{q^m}: coefficient digits in the polynomial basis,
/// constant term first. The element remembers (q, m), which identifies its
/// field because the modulus is chosen canonically.
class Felem {
 public:
  Felem() = default;

  unsigned q() const noexcept { return q_; }
  unsigned degree() const noexcept { return m_; }
  std::uint8_t digit(unsigned i) const noexcept { return d_[i]; }
  std::span<const std::uint8_t> digits() const noexcept {
    return {d_.data(), m_};
  }
  bool is_zero() const noexcept;

  friend bool operator==(const Felem&, const Felem&) = default;

 private:
  friend class ExtField;
  std::array<std::uint8_t, kMaxDegree> d_{};
  std::uint8_t q_ = 0;
  std::uint8_t m_ = 0;
};

/// Order by the integer sum(d_i * q^i): the enumeration order used for the
/// canonical modulus and the normal-element search.
bool index_less(const Felem& a, const Felem& b) noexcept;

/// Lexicographic order of the canonical byte serialization (digit 0 first).
bool bytes_less(const Felem& a, const Felem& b) noexcept;

namespace detail {
struct FieldTables;
}

/// Arithmetic context for F_{q^m}, q prime. Immutable after construction;
/// copies share the precomputed tables.
class ExtField {
 public:
  /// Builds F_{q^m} with the lexicographically smallest monic irreducible
  /// modulus (coefficients read as the integer sum c_i q^i).
  ExtField(unsigned q, unsigned m);

  unsigned q() const noexcept;
  unsigned m() const noexcept;
  /// m+1 coefficients, constant term first, leading coefficient 1.
  std::span<const std::uint8_t> modulus() const noexcept;

  Felem zero() const noexcept;
  Felem one() const noexcept;
  /// The base-field scalar c (reduced mod q).
  Felem scalar(unsigned c) const noexcept;
  /// The basis element x^i, i < m.
  Felem basis(unsigned i) const;
  Felem from_digits(std::span<const std::uint8_t> digits) const;

  Felem add(const Felem& a, const Felem& b) const;
  Felem sub(const Felem& a, const Felem& b) const;
  Felem neg(const Felem& a) const;
  Felem mul(const Felem& a, const Felem& b) const;
  /// Multiplication by a base-field scalar.
  Felem scale(unsigned c, const Felem& a) const;
  Felem inv(const Felem& a) const;
  Felem div(const Felem& a, const Felem& b) const { return mul(a, inv(b)); }
  Felem pow(const Felem& a, std::uint64_t e) const;
  /// a^(q^(i mod m)); negative i gives the inverse automorphism.
  Felem frobenius(const Felem& a, long long i) const;

  /// q^m when it fits in 64 bits.
  std::optional<std::uint64_t> order() const noexcept;
  /// q^m, or TooLarge when the field cannot be enumerated.
  std::uint64_t size() const;
  std::uint64_t index_of(const Felem& a) const;
  Felem element(std::uint64_t index) const;

  /// Throws MismatchedField unless a belongs to this field.
  void check(const Felem& a) const;
  void check(std::span<const Felem> v) const;

  bool operator==(const ExtField& other) const noexcept {
    return q() == other.q() && m() == other.m();
  }

 private:
  std::shared_ptr<const detail::FieldTables> t_;
};

/// Dense matrix over F_q, row-major.
class MatFq {
 public:
  MatFq() = default;
  MatFq(unsigned q, std::size_t rows, std::size_t cols)
      : q_(q), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

  unsigned q() const noexcept { return q_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint8_t& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  std::uint8_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const std::uint8_t> entries() const noexcept { return entries_; }

  friend bool operator==(const MatFq&, const MatFq&) = default;

 private:
  unsigned q_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> entries_;
};

using FqVector = std::vector<std::uint8_t>;

/// m x n matrix whose column j holds the digits of v[j].
MatFq vec_to_mat(const ExtField& ctx, std::span<const Felem> v);
std::vector<Felem> mat_to_vec(const ExtField& ctx, const MatFq& mat);

std::size_t rank_fq(const MatFq& mat);

/// Rank over F_q of the matrix form of x - y.
std::size_t rank_distance(const ExtField& ctx, std::span<const Felem> x,
                          std::span<const Felem> y);

/// Dimension of the F_q-span of the given elements.
std::size_t span_rank(const ExtField& ctx, std::span<const Felem> elems);
bool is_independent(const ExtField& ctx, std::span<const Felem> elems);

struct FqSolution {
  std::optional<FqVector> solution;  // empty when the system is inconsistent
  std::vector<FqVector> kernel;
};

FqSolution solve_fq(const MatFq& a, std::span<const std::uint8_t> b);

/// First element in index order whose conjugates form an F_q-basis.
Felem find_normal_element(const ExtField& ctx);

bool is_prime(unsigned q) noexcept;

}  // namespace rankfuzz
