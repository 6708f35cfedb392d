#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

namespace agv {

using Residue = std::uint8_t;

namespace detail {

// Visitors may return void, or bool where false stops the walk.
template <class Fn, class... Args>
bool visit_continue(Fn& fn, Args&&... args) {
  if constexpr (std::is_void_v<std::invoke_result_t<Fn&, Args...>>) {
    fn(std::forward<Args>(args)...);
    return true;
  } else {
    return bool(fn(std::forward<Args>(args)...));
  }
}

}  // namespace detail

/// The prime field GF(p) for 2 <= p <= 251.
///
/// Construction throws UnsupportedFieldError for anything else. Elements are
/// residues in [0, p) stored in a byte.
class Field {
 public:
  explicit Field(unsigned p);

  unsigned order() const noexcept { return p_; }

  Residue add(Residue a, Residue b) const noexcept {
    unsigned s = unsigned(a) + b;
    return Residue(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return Residue(a >= b ? a - b : a + p_ - b);
  }
  Residue neg(Residue a) const noexcept { return Residue(a == 0 ? 0 : p_ - a); }
  Residue mul(Residue a, Residue b) const noexcept { return Residue((unsigned(a) * b) % p_); }
  /// Multiplicative inverse; throws DomainError for zero.
  Residue inv(Residue a) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  unsigned p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// A vector over GF(p). Symplectic vectors are length 2n in (x | z) order.
class Vector {
 public:
  /// Throws RangeError if an entry is >= p.
  Vector(Field field, std::vector<Residue> entries);
  static Vector zero(Field field, std::size_t length);

  Field field() const noexcept { return field_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::span<const Residue> entries() const noexcept { return entries_; }
  Residue operator[](std::size_t i) const { return entries_[i]; }
  bool is_zero() const noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  Field field_;
  std::vector<Residue> entries_;
};

/// Hamming weight: number of nonzero entries.
std::size_t weight(std::span<const Residue> v) noexcept;
inline std::size_t weight(const Vector& v) noexcept { return weight(v.entries()); }

/// Standard inner product sum(a_i b_i) mod p.
Residue dot(Field field, std::span<const Residue> a, std::span<const Residue> b);

/// <(a|b), (c|d)> = a.d - b.c for vectors of length 2n.
Residue symplectic_product(Field field, std::span<const Residue> u, std::span<const Residue> v);

/// A linear subspace of GF(p)^n held in canonical reduced row-echelon form.
///
/// Two Subspace values are equal iff they describe the same space, because the
/// RREF basis of a space is unique. Instances are immutable.
class Subspace {
 public:
  static Subspace zero(Field field, std::size_t ambient_dim);
  static Subspace full(Field field, std::size_t ambient_dim);

  Field field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t dim() const noexcept { return pivots_.size(); }

  std::span<const Residue> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::vector<Vector> basis() const;

  bool contains(std::span<const Residue> v) const;
  bool contains(const Vector& v) const { return contains(v.entries()); }
  /// Subspace inclusion (other is contained in *this).
  bool contains(const Subspace& other) const;

  /// sum_i coeffs[i] * row(i); coeffs.size() must equal dim().
  std::vector<Residue> combine(std::span<const Residue> coeffs) const;

  /// Visits all p^dim elements, starting with zero. The span passed to fn is
  /// only valid for the duration of the call; returning false from fn stops.
  template <class Fn>
  void for_each_element(Fn&& fn) const {
    std::vector<Residue> cur(n_, 0);
    std::vector<unsigned> digit(dim(), 0);
    if (!detail::visit_continue(fn, std::span<const Residue>(cur))) return;
    const unsigned p = field_.order();
    for (;;) {
      std::size_t i = 0;
      for (; i < dim(); ++i) {
        add_row_into(i, cur);
        if (++digit[i] < p) break;
        digit[i] = 0;  // row i added p times in total: net zero
      }
      if (i == dim()) return;
      if (!detail::visit_continue(fn, std::span<const Residue>(cur))) return;
    }
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  Subspace(Field field, std::size_t n, std::vector<Residue> data, std::vector<std::size_t> pivots)
      : field_(field), n_(n), data_(std::move(data)), pivots_(std::move(pivots)) {}

  void add_row_into(std::size_t i, std::vector<Residue>& acc) const {
    const Residue* r = data_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) acc[j] = field_.add(acc[j], r[j]);
  }

  friend Subspace row_space(Field field, std::size_t n, std::vector<Residue> rows);
  template <class Fn>
  friend void for_each_subspace(Field field, std::size_t n, std::size_t k, Fn&& fn);

  Field field_;
  std::size_t n_;
  std::vector<Residue> data_;  // dim() rows of length n_, row-major
  std::vector<std::size_t> pivots_;
};

/// Row space of a row-major matrix with rows.size() / n rows.
Subspace row_space(Field field, std::size_t n, std::vector<Residue> rows);

/// Canonical RREF basis of span(rows). All rows must have the given field
/// and length, otherwise ShapeError.
Subspace rref_canonicalize(Field field, std::size_t ambient_dim, std::span<const Vector> rows);

/// Rank of a row-major matrix with rows.size() / n rows.
std::size_t rank(Field field, std::size_t n, std::vector<Residue> rows);

/// Euclidean dual C^perp.
Subspace dual_basis(const Subspace& c);

/// Symplectic dual C^perp_s inside GF(p)^{2n}; ShapeError on odd ambient dimension.
Subspace symplectic_dual_basis(const Subspace& c);

/// True iff every pair of basis rows has symplectic product zero.
bool is_isotropic(const Subspace& c);

/// Enumerates every k-dimensional subspace of GF(p)^n exactly once by walking
/// RREF shapes: a pivot set plus free entries right of each pivot.
template <class Fn>
void for_each_subspace(Field field, std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  const unsigned p = field.order();
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  for (;;) {
    // Free positions: (row r, column c) with c > piv[r] and c not a pivot.
    std::vector<char> is_pivot(n, 0);
    for (auto c : piv) is_pivot[c] = 1;
    std::vector<std::size_t> free_pos;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = piv[r] + 1; c < n; ++c)
        if (!is_pivot[c]) free_pos.push_back(r * n + c);

    std::vector<Residue> data(k * n, 0);
    for (std::size_t r = 0; r < k; ++r) data[r * n + piv[r]] = 1;
    for (;;) {
      fn(Subspace(field, n, data, piv));
      std::size_t i = 0;
      for (; i < free_pos.size(); ++i) {
        Residue& e = data[free_pos[i]];
        if (unsigned(e) + 1 < p) {
          ++e;
          break;
        }
        e = 0;
      }
      if (i == free_pos.size()) break;
    }

    // Next pivot combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

/// Visits every vector of GF(p)^n with 1 <= weight <= max_weight, lightest
/// first. Returning false from fn stops the walk.
template <class Fn>
void for_each_vector_up_to_weight(Field field, std::size_t n, std::size_t max_weight, Fn&& fn) {
  const unsigned p = field.order();
  std::vector<Residue> v(n, 0);
  for (std::size_t w = 1; w <= max_weight && w <= n; ++w) {
    std::vector<std::size_t> support(w);
    for (std::size_t i = 0; i < w; ++i) support[i] = i;
    for (;;) {
      for (auto s : support) v[s] = 1;
      for (;;) {
        if (!detail::visit_continue(fn, std::span<const Residue>(v))) return;
        std::size_t i = 0;
        for (; i < w; ++i) {
          Residue& e = v[support[i]];
          if (unsigned(e) + 1 < p) {
            ++e;
            break;
          }
          e = 1;
        }
        if (i == w) break;
      }
      for (auto s : support) v[s] = 0;

      std::size_t i = w;
      while (i > 0 && support[i - 1] == n - w + (i - 1)) --i;
      if (i == 0) break;
      ++support[i - 1];
      for (std::size_t j = i; j < w; ++j) support[j] = support[j - 1] + 1;
    }
  }
}

}  // namespace agv
