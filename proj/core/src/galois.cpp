#include "agv/galois.hpp"

#include <algorithm>
#include <string>

#include "agv/errors.hpp"

namespace agv {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(unsigned p) : p_(p) {
  if (p < 2 || p > 251 || !is_prime(p))
    throw UnsupportedFieldError("field order must be a prime in [2, 251], got " + std::to_string(p));
}

Residue Field::inv(Residue a) const {
  if (a == 0) throw DomainError("zero has no multiplicative inverse");
  // a^(p-2) mod p
  unsigned result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Residue(result);
}

Vector::Vector(Field field, std::vector<Residue> entries) : field_(field), entries_(std::move(entries)) {
  for (auto e : entries_)
    if (e >= field_.order())
      throw RangeError("vector entry " + std::to_string(e) + " is not a residue mod " +
                       std::to_string(field_.order()));
}

Vector Vector::zero(Field field, std::size_t length) {
  return Vector(field, std::vector<Residue>(length, 0));
}

bool Vector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Residue e) { return e == 0; });
}

std::size_t weight(std::span<const Residue> v) noexcept {
  return std::size_t(std::count_if(v.begin(), v.end(), [](Residue e) { return e != 0; }));
}

Residue dot(Field field, std::span<const Residue> a, std::span<const Residue> b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  unsigned long acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += unsigned(a[i]) * b[i];
  return Residue(acc % field.order());
}

Residue symplectic_product(Field field, std::span<const Residue> u, std::span<const Residue> v) {
  if (u.size() != v.size() || u.size() % 2 != 0)
    throw ShapeError("symplectic_product: operands must share an even length");
  const std::size_t n = u.size() / 2;
  Residue ad = dot(field, u.first(n), v.last(n));
  Residue bc = dot(field, u.last(n), v.first(n));
  return field.sub(ad, bc);
}

namespace {

// In-place Gauss-Jordan elimination; returns pivot columns. Leaves the first
// pivots.size() rows in RREF and the rest zero.
std::vector<std::size_t> eliminate(Field f, std::size_t n, std::vector<Residue>& m) {
  const std::size_t rows = n == 0 ? 0 : m.size() / n;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel * n + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      std::swap_ranges(m.begin() + sel * n, m.begin() + (sel + 1) * n, m.begin() + r * n);
    Residue* pr = m.data() + r * n;
    Residue s = f.inv(pr[c]);
    for (std::size_t j = c; j < n; ++j) pr[j] = f.mul(pr[j], s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Residue* pi = m.data() + i * n;
      Residue factor = pi[c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < n; ++j) pi[j] = f.sub(pi[j], f.mul(factor, pr[j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Subspace row_space(Field field, std::size_t n, std::vector<Residue> rows) {
  if (n == 0) return Subspace(field, 0, {}, {});
  if (rows.size() % n != 0) throw ShapeError("row_space: matrix size is not a multiple of n");
  for (auto e : rows)
    if (e >= field.order()) throw RangeError("row_space: entry out of range");
  auto pivots = eliminate(field, n, rows);
  rows.resize(pivots.size() * n);
  return Subspace(field, n, std::move(rows), std::move(pivots));
}

Subspace rref_canonicalize(Field field, std::size_t ambient_dim, std::span<const Vector> rows) {
  std::vector<Residue> flat;
  flat.reserve(rows.size() * ambient_dim);
  for (const auto& v : rows) {
    if (v.field() != field) throw ShapeError("rref_canonicalize: rows over different fields");
    if (v.size() != ambient_dim) throw ShapeError("rref_canonicalize: rows of different lengths");
    flat.insert(flat.end(), v.entries().begin(), v.entries().end());
  }
  return row_space(field, ambient_dim, std::move(flat));
}

std::size_t rank(Field field, std::size_t n, std::vector<Residue> rows) {
  if (n == 0) return 0;
  return eliminate(field, n, rows).size();
}

Subspace Subspace::zero(Field field, std::size_t ambient_dim) {
  return Subspace(field, ambient_dim, {}, {});
}

Subspace Subspace::full(Field field, std::size_t ambient_dim) {
  std::vector<Residue> data(ambient_dim * ambient_dim, 0);
  std::vector<std::size_t> pivots(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    data[i * ambient_dim + i] = 1;
    pivots[i] = i;
  }
  return Subspace(field, ambient_dim, std::move(data), std::move(pivots));
}

std::vector<Vector> Subspace::basis() const {
  std::vector<Vector> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    auto r = row(i);
    out.emplace_back(field_, std::vector<Residue>(r.begin(), r.end()));
  }
  return out;
}

bool Subspace::contains(std::span<const Residue> v) const {
  if (v.size() != n_) throw ShapeError("contains: vector length differs from ambient dimension");
  std::vector<Residue> rem(v.begin(), v.end());
  // Pivot columns are zero in every other row, so one pass suffices.
  for (std::size_t i = 0; i < dim(); ++i) {
    Residue coef = rem[pivots_[i]];
    if (coef == 0) continue;
    const Residue* r = data_.data() + i * n_;
    for (std::size_t j = pivots_[i]; j < n_; ++j) rem[j] = field_.sub(rem[j], field_.mul(coef, r[j]));
  }
  return std::all_of(rem.begin(), rem.end(), [](Residue e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.field_ != field_ || other.n_ != n_) throw ShapeError("contains: incompatible subspaces");
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.row(i))) return false;
  return true;
}

std::vector<Residue> Subspace::combine(std::span<const Residue> coeffs) const {
  if (coeffs.size() != dim()) throw ShapeError("combine: need one coefficient per basis row");
  std::vector<Residue> out(n_, 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (coeffs[i] == 0) continue;
    const Residue* r = data_.data() + i * n_;
    for (std::size_t j = 0; j < n_; ++j) out[j] = field_.add(out[j], field_.mul(coeffs[i], r[j]));
  }
  return out;
}

Subspace dual_basis(const Subspace& c) {
  const Field f = c.field();
  const std::size_t n = c.ambient_dim();
  const auto& piv = c.pivots();
  std::vector<char> is_pivot(n, 0);
  for (auto p : piv) is_pivot[p] = 1;

  // One null-space vector per free column: e_free - sum_i R[i][free] e_{piv[i]}.
  std::vector<Residue> rows;
  rows.reserve((n - c.dim()) * n);
  for (std::size_t fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Residue> v(n, 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < c.dim(); ++i) v[piv[i]] = f.neg(c.row(i)[fc]);
    rows.insert(rows.end(), v.begin(), v.end());
  }
  return row_space(f, n, std::move(rows));
}

Subspace symplectic_dual_basis(const Subspace& c) {
  const std::size_t len = c.ambient_dim();
  if (len % 2 != 0) throw ShapeError("symplectic_dual_basis: ambient dimension must be even");
  const std::size_t n = len / 2;
  const Field f = c.field();
  // <(a|b), (x|z)> = a.z - b.x, i.e. the Euclidean product of (-b|a) with (x|z).
  std::vector<Residue> rows;
  rows.reserve(c.dim() * len);
  for (std::size_t i = 0; i < c.dim(); ++i) {
    auto r = c.row(i);
    for (std::size_t j = 0; j < n; ++j) rows.push_back(f.neg(r[n + j]));
    for (std::size_t j = 0; j < n; ++j) rows.push_back(r[j]);
  }
  return dual_basis(row_space(f, len, std::move(rows)));
}

bool is_isotropic(const Subspace& c) {
  if (c.ambient_dim() % 2 != 0) throw ShapeError("is_isotropic: ambient dimension must be even");
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j)
      if (symplectic_product(c.field(), c.row(i), c.row(j)) != 0) return false;
  return true;
}

}  // namespace agv
