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

#include "rankfuzz/field.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "rankfuzz/linalg.hpp"

namespace rankfuzz {

namespace {

// Dense polynomials over F_q, constant term first, used only while choosing
// the modulus and inverting elements.
using Poly = std::vector<int>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int inv_mod(int a, int q) {
  return static_cast<int>(linalg::PrimeOps{static_cast<unsigned>(q)}.inv(
      static_cast<std::uint8_t>(a)));
}

// Remainder and quotient of a / b, b nonzero.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b, int q) {
  trim(a);
  Poly quot;
  const int lead_inv = inv_mod(b.back(), q);
  const std::size_t db = b.size() - 1;
  if (a.size() >= b.size()) quot.assign(a.size() - db, 0);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const int c = a.back() * lead_inv % q;
    quot[shift] = c;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = ((a[shift + i] - c * b[i]) % q + q) % q;
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, int q) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % q;
  return divmod(std::move(prod), f, q).second;
}

Poly poly_sub(Poly a, const Poly& b, int q) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % q + q) % q;
  trim(a);
  return a;
}

Poly gcd(Poly a, Poly b, int q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b, q).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly powmod(Poly base, unsigned e, const Poly& f, int q) {
  Poly result{1};
  while (e) {
    if (e & 1) result = mulmod(result, base, f, q);
    base = mulmod(base, base, f, q);
    e >>= 1;
  }
  return result;
}

// Ben-Or: f of degree m is irreducible iff gcd(f, x^(q^i) - x) = 1 for
// every i <= m/2.
bool is_irreducible(const Poly& f, int q) {
  const std::size_t m = f.size() - 1;
  if (m == 1) return true;
  const Poly x{0, 1};
  Poly h = x;
  for (std::size_t i = 1; i <= m / 2; ++i) {
    h = powmod(h, static_cast<unsigned>(q), f, q);
    const Poly g = gcd(f, poly_sub(h, x, q), q);
    if (g.size() > 1) return false;
  }
  return true;
}

Poly canonical_modulus(unsigned q, unsigned m) {
  Poly f(m + 1, 0);
  f[m] = 1;
  // Count through (c_0, ..., c_{m-1}) with c_0 least significant.
  while (true) {
    if (is_irreducible(f, static_cast<int>(q))) return f;
    unsigned i = 0;
    while (i < m && ++f[i] == static_cast<int>(q)) f[i++] = 0;
    if (i == m) break;
  }
  throw Error(ErrorCode::DegreeOutOfRange, "no irreducible polynomial found");
}

}  // namespace

namespace detail {

struct FieldTables {
  unsigned q = 0;
  unsigned m = 0;
  std::vector<std::uint8_t> modulus;
  std::optional<std::uint64_t> order;
  // frob[i * m + j] = x^(j q^i) mod modulus
  std::vector<Felem> frob;
};

}  // namespace detail

bool is_prime(unsigned q) noexcept {
  if (q < 2) return false;
  for (unsigned d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

bool Felem::is_zero() const noexcept {
  return std::all_of(d_.begin(), d_.begin() + m_, [](auto x) { return x == 0; });
}

bool index_less(const Felem& a, const Felem& b) noexcept {
  for (unsigned i = a.degree(); i-- > 0;) {
    if (a.digit(i) != b.digit(i)) return a.digit(i) < b.digit(i);
  }
  return false;
}

bool bytes_less(const Felem& a, const Felem& b) noexcept {
  const auto da = a.digits();
  const auto db = b.digits();
  return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
}

ExtField::ExtField(unsigned q, unsigned m) {
  if (!is_prime(q) || q > kMaxPrime)
    throw Error(ErrorCode::NonPrimeQ, "q must be a prime <= 251, got " + std::to_string(q));
  if (m < 1 || m > kMaxDegree)
    throw Error(ErrorCode::DegreeOutOfRange, "m must lie in [1, 64], got " + std::to_string(m));

  auto t = std::make_shared<detail::FieldTables>();
  t->q = q;
  t->m = m;
  const Poly f = canonical_modulus(q, m);
  t->modulus.assign(f.begin(), f.end());

  std::uint64_t order = 1;
  bool fits = true;
  for (unsigned i = 0; i < m && fits; ++i) {
    if (order > UINT64_MAX / q) fits = false;
    else order *= q;
  }
  if (fits) t->order = order;
  t_ = t;

  // Frobenius tables: row 0 is the identity basis, row i+1 applies x -> x^q
  // to row i.
  t->frob.resize(std::size_t{m} * m);
  for (unsigned j = 0; j < m; ++j) t->frob[j] = basis(j);
  for (unsigned i = 1; i < m; ++i) {
    for (unsigned j = 0; j < m; ++j)
      t->frob[std::size_t{i} * m + j] = pow(t->frob[std::size_t{i - 1} * m + j], q);
  }
}

unsigned ExtField::q() const noexcept { return t_->q; }
unsigned ExtField::m() const noexcept { return t_->m; }
std::span<const std::uint8_t> ExtField::modulus() const noexcept { return t_->modulus; }

Felem ExtField::zero() const noexcept {
  Felem z;
  z.q_ = static_cast<std::uint8_t>(t_->q);
  z.m_ = static_cast<std::uint8_t>(t_->m);
  return z;
}

Felem ExtField::one() const noexcept { return scalar(1); }

Felem ExtField::scalar(unsigned c) const noexcept {
  Felem z = zero();
  z.d_[0] = static_cast<std::uint8_t>(c % t_->q);
  return z;
}

Felem ExtField::basis(unsigned i) const {
  if (i >= t_->m) throw Error(ErrorCode::DimensionMismatch, "basis index out of range");
  Felem z = zero();
  z.d_[i] = 1;
  return z;
}

Felem ExtField::from_digits(std::span<const std::uint8_t> digits) const {
  if (digits.size() != t_->m)
    throw Error(ErrorCode::MismatchedField, "element has " + std::to_string(digits.size()) +
                                                " digits, field degree is " +
                                                std::to_string(t_->m));
  Felem z = zero();
  for (unsigned i = 0; i < t_->m; ++i) {
    if (digits[i] >= t_->q) throw Error(ErrorCode::MismatchedField, "digit out of range");
    z.d_[i] = digits[i];
  }
  return z;
}

void ExtField::check(const Felem& a) const {
  if (a.q_ != t_->q || a.m_ != t_->m)
    throw Error(ErrorCode::MismatchedField,
                "element of F_" + std::to_string(a.q_) + "^" + std::to_string(a.m_) +
                    " used in F_" + std::to_string(t_->q) + "^" + std::to_string(t_->m));
}

void ExtField::check(std::span<const Felem> v) const {
  for (const auto& a : v) check(a);
}

Felem ExtField::add(const Felem& a, const Felem& b) const {
  check(a);
  check(b);
  Felem z = zero();
  const unsigned q = t_->q;
  for (unsigned i = 0; i < t_->m; ++i)
    z.d_[i] = static_cast<std::uint8_t>((a.d_[i] + b.d_[i]) % q);
  return z;
}

Felem ExtField::sub(const Felem& a, const Felem& b) const {
  check(a);
  check(b);
  Felem z = zero();
  const unsigned q = t_->q;
  for (unsigned i = 0; i < t_->m; ++i)
    z.d_[i] = static_cast<std::uint8_t>((a.d_[i] + q - b.d_[i]) % q);
  return z;
}

Felem ExtField::neg(const Felem& a) const { return sub(zero(), a); }

Felem ExtField::scale(unsigned c, const Felem& a) const {
  check(a);
  Felem z = zero();
  const unsigned q = t_->q;
  c %= q;
  for (unsigned i = 0; i < t_->m; ++i)
    z.d_[i] = static_cast<std::uint8_t>(c * a.d_[i] % q);
  return z;
}

Felem ExtField::mul(const Felem& a, const Felem& b) const {
  check(a);
  check(b);
  const unsigned q = t_->q;
  const unsigned m = t_->m;
  // Coefficients stay below 2m * q^2 < 2^32 before the final reduction.
  std::array<std::uint32_t, 2 * kMaxDegree> acc{};
  for (unsigned i = 0; i < m; ++i) {
    if (a.d_[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) acc[i + j] += unsigned{a.d_[i]} * b.d_[j];
  }
  const auto& f = t_->modulus;
  for (unsigned k = 2 * m - 1; k-- > m;) {
    const std::uint32_t c = acc[k] % q;
    acc[k] = 0;
    if (c == 0) continue;
    // x^k = -x^(k-m) * (f - x^m)
    for (unsigned j = 0; j < m; ++j) acc[k - m + j] += c * ((q - f[j]) % q);
  }
  Felem z = zero();
  for (unsigned i = 0; i < m; ++i) z.d_[i] = static_cast<std::uint8_t>(acc[i] % q);
  return z;
}

Felem ExtField::inv(const Felem& a) const {
  check(a);
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  const int q = static_cast<int>(t_->q);
  const Poly f(t_->modulus.begin(), t_->modulus.end());
  Poly r0 = f, r1(a.d_.begin(), a.d_.begin() + t_->m);
  trim(r1);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    auto [quot, rem] = divmod(r0, r1, q);
    Poly prod;
    if (!quot.empty() && !s1.empty()) {
      prod.assign(quot.size() + s1.size() - 1, 0);
      for (std::size_t i = 0; i < quot.size(); ++i)
        for (std::size_t j = 0; j < s1.size(); ++j)
          prod[i + j] = (prod[i + j] + quot[i] * s1[j]) % q;
    }
    Poly s2 = poly_sub(s0, prod, q);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant.
  const int c = inv_mod(r0[0], q);
  Poly s = divmod(s0, f, q).second;
  Felem z = zero();
  for (std::size_t i = 0; i < s.size(); ++i) z.d_[i] = static_cast<std::uint8_t>(s[i] * c % q);
  return z;
}

Felem ExtField::pow(const Felem& a, std::uint64_t e) const {
  check(a);
  Felem result = one();
  Felem base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Felem ExtField::frobenius(const Felem& a, long long i) const {
  check(a);
  const long long m = t_->m;
  const auto k = static_cast<std::size_t>(((i % m) + m) % m);
  if (k == 0) return a;
  const unsigned q = t_->q;
  std::array<std::uint32_t, kMaxDegree> acc{};
  const Felem* row = &t_->frob[k * t_->m];
  for (unsigned j = 0; j < t_->m; ++j) {
    const unsigned c = a.d_[j];
    if (c == 0) continue;
    for (unsigned r = 0; r < t_->m; ++r) acc[r] += c * row[j].d_[r];
  }
  Felem z = zero();
  for (unsigned r = 0; r < t_->m; ++r) z.d_[r] = static_cast<std::uint8_t>(acc[r] % q);
  return z;
}

std::optional<std::uint64_t> ExtField::order() const noexcept { return t_->order; }

std::uint64_t ExtField::size() const {
  if (!t_->order) throw Error(ErrorCode::TooLarge, "field too large to enumerate");
  return *t_->order;
}

std::uint64_t ExtField::index_of(const Felem& a) const {
  check(a);
  if (!t_->order) throw Error(ErrorCode::TooLarge, "field too large to index");
  std::uint64_t idx = 0;
  for (unsigned i = t_->m; i-- > 0;) idx = idx * t_->q + a.d_[i];
  return idx;
}

Felem ExtField::element(std::uint64_t index) const {
  if (t_->order && index >= *t_->order)
    throw Error(ErrorCode::BadRange, "element index out of range");
  Felem z = zero();
  for (unsigned i = 0; i < t_->m && index; ++i) {
    z.d_[i] = static_cast<std::uint8_t>(index % t_->q);
    index /= t_->q;
  }
  return z;
}

MatFq vec_to_mat(const ExtField& ctx, std::span<const Felem> v) {
  ctx.check(v);
  MatFq mat(ctx.q(), ctx.m(), v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    for (unsigned i = 0; i < ctx.m(); ++i) mat.at(i, j) = v[j].digit(i);
  return mat;
}

std::vector<Felem> mat_to_vec(const ExtField& ctx, const MatFq& mat) {
  if (mat.rows() != ctx.m() || mat.q() != ctx.q())
    throw Error(ErrorCode::MismatchedField, "matrix shape does not match the field");
  std::vector<Felem> v;
  v.reserve(mat.cols());
  std::vector<std::uint8_t> col(ctx.m());
  for (std::size_t j = 0; j < mat.cols(); ++j) {
    for (unsigned i = 0; i < ctx.m(); ++i) col[i] = mat.at(i, j);
    v.push_back(ctx.from_digits(col));
  }
  return v;
}

namespace {

linalg::Rows<std::uint8_t> to_rows(const MatFq& mat) {
  linalg::Rows<std::uint8_t> rows(mat.rows(), std::vector<std::uint8_t>(mat.cols()));
  for (std::size_t r = 0; r < mat.rows(); ++r)
    for (std::size_t c = 0; c < mat.cols(); ++c) rows[r][c] = mat.at(r, c);
  return rows;
}

}  // namespace

std::size_t rank_fq(const MatFq& mat) {
  return linalg::rank(linalg::PrimeOps{mat.q()}, to_rows(mat), mat.cols());
}

std::size_t rank_distance(const ExtField& ctx, std::span<const Felem> x,
                          std::span<const Felem> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "rank_distance: lengths differ");
  std::vector<Felem> diff;
  diff.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff.push_back(ctx.sub(x[i], y[i]));
  return rank_fq(vec_to_mat(ctx, diff));
}

std::size_t span_rank(const ExtField& ctx, std::span<const Felem> elems) {
  return rank_fq(vec_to_mat(ctx, elems));
}

bool is_independent(const ExtField& ctx, std::span<const Felem> elems) {
  return span_rank(ctx, elems) == elems.size();
}

FqSolution solve_fq(const MatFq& a, std::span<const std::uint8_t> b) {
  if (b.size() != a.rows())
    throw Error(ErrorCode::DimensionMismatch, "solve_fq: right-hand side has " +
                                                  std::to_string(b.size()) + " entries for " +
                                                  std::to_string(a.rows()) + " rows");
  for (auto x : b)
    if (x >= a.q()) throw Error(ErrorCode::DimensionMismatch, "solve_fq: entry out of range");
  auto sol = linalg::solve(linalg::PrimeOps{a.q()}, to_rows(a), a.cols(),
                           std::vector<std::uint8_t>(b.begin(), b.end()));
  return FqSolution{std::move(sol.particular), std::move(sol.kernel)};
}

Felem find_normal_element(const ExtField& ctx) {
  const unsigned q = ctx.q(), m = ctx.m();
  // A normal element has nonzero trace, and the trace is F_q-linear, so
  // every index below q^j0 (j0 = first basis vector with nonzero trace) is
  // skipped wholesale and later candidates are filtered cheaply.
  std::vector<unsigned> tr(m);
  for (unsigned j = 0; j < m; ++j) {
    Felem t = ctx.zero();
    for (unsigned i = 0; i < m; ++i) t = ctx.add(t, ctx.frobenius(ctx.basis(j), i));
    tr[j] = t.digit(0);
  }
  const auto j0 = static_cast<unsigned>(
      std::find_if(tr.begin(), tr.end(), [](unsigned t) { return t != 0; }) - tr.begin());
  std::uint64_t idx = 1;
  for (unsigned j = 0; j < j0; ++j) idx *= q;

  std::vector<Felem> conj(m);
  for (;; ++idx) {
    const Felem a = ctx.element(idx);
    unsigned trace = 0;
    for (unsigned j = j0; j < m; ++j) trace = (trace + a.digit(j) * tr[j]) % q;
    if (trace == 0) continue;
    for (unsigned i = 0; i < m; ++i) conj[i] = ctx.frobenius(a, i);
    if (is_independent(ctx, conj)) return a;
  }
}

}  // namespace rankfuzz
