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

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rankfuzz/field.hpp"

// Gaussian elimination shared by the F_q and F_{q^m} solvers.

namespace rankfuzz::linalg {

template <class Ops>
concept FieldOps = requires(const Ops& ops, const typename Ops::value_type& a) {
  { ops.zero() } -> std::same_as<typename Ops::value_type>;
  { ops.one() } -> std::same_as<typename Ops::value_type>;
  { ops.is_zero(a) } -> std::same_as<bool>;
  { ops.add(a, a) } -> std::same_as<typename Ops::value_type>;
  { ops.sub(a, a) } -> std::same_as<typename Ops::value_type>;
  { ops.mul(a, a) } -> std::same_as<typename Ops::value_type>;
  { ops.inv(a) } -> std::same_as<typename Ops::value_type>;
};

struct PrimeOps {
  using value_type = std::uint8_t;
  unsigned q;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    return static_cast<value_type>((a + b) % q);
  }
  value_type sub(value_type a, value_type b) const {
    return static_cast<value_type>((a + q - b) % q);
  }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((unsigned{a} * b) % q);
  }
  value_type inv(value_type a) const {
    // a^(q-2) by square and multiply.
    unsigned result = 1, base = a, e = q - 2;
    while (e) {
      if (e & 1) result = result * base % q;
      base = base * base % q;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }
};

struct ExtOps {
  using value_type = Felem;
  const ExtField& ctx;

  value_type zero() const { return ctx.zero(); }
  value_type one() const { return ctx.one(); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type add(const value_type& a, const value_type& b) const { return ctx.add(a, b); }
  value_type sub(const value_type& a, const value_type& b) const { return ctx.sub(a, b); }
  value_type mul(const value_type& a, const value_type& b) const { return ctx.mul(a, b); }
  value_type inv(const value_type& a) const { return ctx.inv(a); }
};

template <class T>
using Rows = std::vector<std::vector<T>>;

/// In-place reduced row echelon form over the first `ncols` columns.
/// Pivots are chosen column by column, top-down, so the result is
/// deterministic. Returns the pivot columns in order.
template <FieldOps Ops>
std::vector<std::size_t> row_reduce(const Ops& ops, Rows<typename Ops::value_type>& rows,
                                    std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && ops.is_zero(rows[p][c])) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const auto scale = ops.inv(rows[r][c]);
    for (auto& x : rows[r]) x = ops.mul(x, scale);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || ops.is_zero(rows[i][c])) continue;
      const auto f = rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j)
        rows[i][j] = ops.sub(rows[i][j], ops.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <FieldOps Ops>
std::size_t rank(const Ops& ops, Rows<typename Ops::value_type> rows, std::size_t ncols) {
  return row_reduce(ops, rows, ncols).size();
}

template <class T>
struct Solution {
  std::optional<std::vector<T>> particular;
  std::vector<std::vector<T>> kernel;
};

/// Solves A x = b (b may be empty for the homogeneous case). Free variables
/// are set to zero in the particular solution; the kernel basis has one
/// vector per free column, in increasing column order.
template <FieldOps Ops>
Solution<typename Ops::value_type> solve(const Ops& ops, Rows<typename Ops::value_type> a,
                                         std::size_t ncols,
                                         const std::vector<typename Ops::value_type>& b) {
  using T = typename Ops::value_type;
  const bool homogeneous = b.empty();
  if (!homogeneous) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  }
  const auto pivots = row_reduce(ops, a, ncols);

  Solution<T> out;
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;

  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(ncols, ops.zero());
    v[f] = ops.one();
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = ops.sub(ops.zero(), a[i][f]);
    out.kernel.push_back(std::move(v));
  }

  if (homogeneous) {
    out.particular = std::vector<T>(ncols, ops.zero());
    return out;
  }
  for (std::size_t i = pivots.size(); i < a.size(); ++i) {
    if (!ops.is_zero(a[i][ncols])) return out;
  }
  std::vector<T> x(ncols, ops.zero());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][ncols];
  out.particular = std::move(x);
  return out;
}

}  // namespace rankfuzz::linalg
