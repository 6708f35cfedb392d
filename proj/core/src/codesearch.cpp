#include "agv/codesearch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "agv/errors.hpp"

namespace agv {

NestedPair::NestedPair(Subspace c1, Subspace c2) : c1_(std::move(c1)), c2_(std::move(c2)) {
  if (c1_.field() != c2_.field() || c1_.ambient_dim() != c2_.ambient_dim())
    throw ShapeError("nested pair: C1 and C2 live in different spaces");
  if (!c1_.contains(c2_)) throw ShapeError("nested pair: C2 is not a subspace of C1");
}

IsotropicCode::IsotropicCode(Subspace c) : c_(std::move(c)), normalizer_(Subspace::zero(c_.field(), 0)) {
  if (c_.ambient_dim() % 2 != 0) throw ShapeError("stabilizer code: ambient dimension must be even");
  if (!is_isotropic(c_)) throw ShapeError("stabilizer code: generators are not symplectically self-orthogonal");
  normalizer_ = symplectic_dual_basis(c_);
}

std::string to_string(const Distance& d) { return d ? std::to_string(*d) : "inf"; }

std::uint64_t error_index(std::span<const Residue> e, unsigned q) {
  std::uint64_t idx = 0;
  for (auto r : e) idx = idx * q + r;
  return idx;
}

namespace {

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

void check_dims(unsigned n, unsigned k1, unsigned k2) {
  if (k2 > k1 || k1 > n) throw RangeError("need 0 <= k2 <= k1 <= n");
}

// Row-major k x cols matrix of full row rank, drawn uniformly by rejection.
std::vector<Residue> random_full_rank(Field f, std::size_t k, std::size_t cols, Rng& rng) {
  std::vector<Residue> m(k * cols);
  for (;;) {
    for (auto& e : m) e = Residue(rng.below(f.order()));
    if (rank(f, cols, m) == k) return m;
  }
}

// C2 as the span of coefficient rows taken in the basis of C1.
Subspace image_in(const Subspace& c1, std::span<const Residue> coeff_rows, std::size_t rows) {
  const std::size_t k1 = c1.dim();
  std::vector<Residue> flat;
  flat.reserve(rows * c1.ambient_dim());
  for (std::size_t i = 0; i < rows; ++i) {
    auto v = c1.combine(coeff_rows.subspan(i * k1, k1));
    flat.insert(flat.end(), v.begin(), v.end());
  }
  return row_space(c1.field(), c1.ambient_dim(), std::move(flat));
}

// Minimum weight over `outer` minus `inner`.
Distance min_weight_outside(const Subspace& outer, const Subspace& inner) {
  Distance best;
  outer.for_each_element([&](std::span<const Residue> v) {
    const auto w = unsigned(weight(v));
    if (w == 0 || (best && w >= *best)) return true;
    if (!inner.contains(v)) best = w;
    return !(best && *best == 1);
  });
  return best;
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs trial(t) for t = 1..trials and keeps the lowest-indexed success.
template <class Result, class Trial>
std::optional<std::pair<std::uint64_t, Result>> first_success(std::uint64_t trials, unsigned threads, Trial trial) {
  threads = resolve_threads(threads);
  if (threads == 1 || trials == 1) {
    for (std::uint64_t t = 1; t <= trials; ++t)
      if (auto r = trial(t)) return std::make_pair(t, std::move(*r));
    return std::nullopt;
  }
  std::atomic<std::uint64_t> next{1};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::optional<std::pair<std::uint64_t, Result>> found;
  std::exception_ptr failure;
  std::uint64_t failure_index = std::numeric_limits<std::uint64_t>::max();
  std::mutex mu;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t t = next.fetch_add(1);
      if (t > trials || t > best.load()) return;
      try {
        if (auto r = trial(t)) {
          std::lock_guard lock(mu);
          if (t < best.load()) {
            best.store(t);
            found.emplace(t, std::move(*r));
          }
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (t < failure_index) {
          failure_index = t;
          failure = std::current_exception();
        }
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure && failure_index < best.load()) std::rethrow_exception(failure);
  return found;
}

std::optional<DistancePair> css_trial(const CssBoundQuery& query, unsigned q, std::uint64_t seed, std::uint64_t t,
                                      std::optional<NestedPair>* keep) {
  Rng rng(seed, t);
  auto pair = random_nested_pair(query.n, q, query.k1, query.k2, rng);
  auto d = css_distances(pair);
  if (!meets(d.dx, query.dx) || !meets(d.dz, query.dz)) return std::nullopt;
  if (keep) keep->emplace(std::move(pair));
  return d;
}

unsigned prime_field_order(std::uint64_t q) {
  if (q > 251 || !is_prime(q))
    throw UnsupportedFieldError("code search needs a prime q <= 251, got " + std::to_string(q));
  return unsigned(q);
}

}  // namespace

bool EnumerationReport::counting_identities_hold() const {
  const BigInt qn = boost::multiprecision::pow(BigInt(q), n) - 1;
  const BigInt ax = boost::multiprecision::pow(BigInt(q), k1) - boost::multiprecision::pow(BigInt(q), k2);
  const BigInt az = boost::multiprecision::pow(BigInt(q), n - k2) - boost::multiprecision::pow(BigInt(q), n - k1);
  if (per_error_x.size() != qn || per_error_z.size() != qn) return false;
  const BigInt total = total_pairs;
  for (std::size_t i = 0; i < per_error_x.size(); ++i) {
    if (BigInt(per_error_x[i]) * qn != ax * total) return false;
    if (BigInt(per_error_z[i]) * qn != az * total) return false;
  }
  return true;
}

EnumerationReport enumerate_nested_pairs(unsigned n, unsigned q, unsigned k1, unsigned k2) {
  const Field f(prime_field_order(q));
  check_dims(n, k1, k2);
  const BigInt pairs = gaussian_binomial(n, k1, q) * gaussian_binomial(k1, k2, q);
  if (pairs > kMaxEnumeratedPairs)
    throw SizeError("enumerate_nested_pairs: " + pairs.str() + " pairs exceed the guard of " +
                    std::to_string(kMaxEnumeratedPairs));
  const std::uint64_t space = checked_power(q, n, kMaxErrorPatterns + 1);
  if (space > kMaxErrorPatterns + 1) throw SizeError("enumerate_nested_pairs: q^n exceeds the error-pattern guard");

  EnumerationReport rep;
  rep.n = n;
  rep.q = q;
  rep.k1 = k1;
  rep.k2 = k2;
  rep.per_error_x.assign(space - 1, 0);
  rep.per_error_z.assign(space - 1, 0);

  for_each_subspace(f, n, k1, [&](const Subspace& c1) {
    const Subspace c1_dual = dual_basis(c1);
    for_each_subspace(f, k1, k2, [&](const Subspace& coords) {
      std::vector<Residue> rows;
      for (std::size_t i = 0; i < coords.dim(); ++i) rows.insert(rows.end(), coords.row(i).begin(), coords.row(i).end());
      const Subspace c2 = image_in(c1, rows, coords.dim());
      ++rep.total_pairs;
      c1.for_each_element([&](std::span<const Residue> v) {
        if (!c2.contains(v)) ++rep.per_error_x[error_index(v, q) - 1];
      });
      dual_basis(c2).for_each_element([&](std::span<const Residue> v) {
        if (!c1_dual.contains(v)) ++rep.per_error_z[error_index(v, q) - 1];
      });
    });
  });
  return rep;
}

DistancePair css_distances(const NestedPair& pair) {
  const unsigned q = pair.c1().field().order();
  const std::uint64_t cap = kMaxCosetElements;
  const std::uint64_t a = checked_power(q, pair.c1().dim(), cap);
  const std::uint64_t b = checked_power(q, pair.n() - pair.c2().dim(), cap);
  if (a > cap || b > cap || a + b > cap)
    throw SizeError("css_distances: q^k1 + q^(n-k2) exceeds the guard of 2^26");
  return {min_weight_outside(pair.c1(), pair.c2()),
          min_weight_outside(dual_basis(pair.c2()), dual_basis(pair.c1()))};
}

bool stab_is_detectable(const IsotropicCode& code, std::span<const Residue> e) {
  if (e.size() != 2 * code.n()) throw ShapeError("stab_is_detectable: error must have length 2n");
  if (weight(e) == 0) throw DomainError("stab_is_detectable: the zero vector is not an error");
  return !code.normalizer().contains(e) || code.stabilizer().contains(e);
}

bool stab_is_detectable(const IsotropicCode& code, const Vector& e) {
  if (e.field() != code.stabilizer().field()) throw ShapeError("stab_is_detectable: field mismatch");
  return stab_is_detectable(code, e.entries());
}

bool stab_detects_profile(const IsotropicCode& code, unsigned dx, unsigned dz) {
  const auto n = unsigned(code.n());
  if (dx < 1 || dx > n + 1 || dz < 1 || dz > n + 1) throw RangeError("stab_detects_profile: dx, dz must lie in [1, n+1]");
  const Field f = code.stabilizer().field();
  const BigInt patterns = (ball_sum(n, f.order(), int(dx) - 1) + 1) * (ball_sum(n, f.order(), int(dz) - 1) + 1);
  if (patterns > kMaxErrorPatterns)
    throw SizeError("stab_detects_profile: " + patterns.str() + " error patterns exceed the guard");

  std::vector<Residue> e(2 * n, 0);
  bool ok = true;
  // Phase parts: zero first, then weights 1..dz-1.
  auto check_phase = [&]() {
    auto z = std::span<Residue>(e).subspan(n);
    if (weight(e) != 0 && !stab_is_detectable(code, e)) return false;
    bool inner_ok = true;
    for_each_vector_up_to_weight(f, n, dz - 1, [&](std::span<const Residue> ez) {
      std::copy(ez.begin(), ez.end(), z.begin());
      inner_ok = stab_is_detectable(code, e);
      return inner_ok;
    });
    std::fill(z.begin(), z.end(), 0);
    return inner_ok;
  };
  ok = check_phase();
  if (ok) {
    for_each_vector_up_to_weight(f, n, dx - 1, [&](std::span<const Residue> ex) {
      std::copy(ex.begin(), ex.end(), e.begin());
      ok = check_phase();
      return ok;
    });
  }
  return ok;
}

NestedPair random_nested_pair(unsigned n, unsigned q, unsigned k1, unsigned k2, Rng& rng) {
  const Field f(prime_field_order(q));
  check_dims(n, k1, k2);
  Subspace c1 = row_space(f, n, random_full_rank(f, k1, n, rng));
  auto coeffs = random_full_rank(f, k2, k1, rng);
  Subspace c2 = image_in(c1, coeffs, k2);
  return NestedPair(std::move(c1), std::move(c2));
}

NestedPair random_nested_pair(unsigned n, unsigned q, unsigned k1, unsigned k2, std::uint64_t seed) {
  Rng rng(seed, 0);
  return random_nested_pair(n, q, k1, k2, rng);
}

IsotropicCode random_isotropic_code(unsigned n, unsigned q, unsigned k, Rng& rng) {
  const Field f(prime_field_order(q));
  if (k > n) throw RangeError("random_isotropic_code: need 0 <= k <= n");
  Subspace c = Subspace::zero(f, 2 * n);
  for (unsigned step = 0; step < n - k; ++step) {
    const Subspace normalizer = symplectic_dual_basis(c);
    std::vector<Residue> coeffs(normalizer.dim());
    std::vector<Residue> v;
    do {
      for (auto& x : coeffs) x = Residue(rng.below(q));
      v = normalizer.combine(coeffs);
    } while (c.contains(v));
    std::vector<Residue> rows;
    for (std::size_t i = 0; i < c.dim(); ++i) rows.insert(rows.end(), c.row(i).begin(), c.row(i).end());
    rows.insert(rows.end(), v.begin(), v.end());
    c = row_space(f, 2 * n, std::move(rows));
  }
  return IsotropicCode(std::move(c));
}

IsotropicCode random_isotropic_code(unsigned n, unsigned q, unsigned k, std::uint64_t seed) {
  Rng rng(seed, 0);
  return random_isotropic_code(n, q, k, rng);
}

std::optional<Witness> gv_witness_search(const CssBoundQuery& query, const SearchOptions& options) {
  query.validate();
  if (options.trials < 1) throw RangeError("trials must be >= 1");
  const unsigned q = prime_field_order(query.q);
  auto hit = first_success<DistancePair>(options.trials, options.threads, [&](std::uint64_t t) {
    return css_trial(query, q, options.seed, t, nullptr);
  });
  if (!hit) return std::nullopt;
  // Replay the winning trial to recover the code.
  std::optional<NestedPair> pair;
  css_trial(query, q, options.seed, hit->first, &pair);
  return Witness{std::move(*pair), hit->second, hit->first};
}

std::optional<Witness> gv_witness_search(const StabBoundQuery& query, const SearchOptions& options) {
  query.validate();
  if (options.trials < 1) throw RangeError("trials must be >= 1");
  const unsigned q = prime_field_order(query.q);
  auto hit = first_success<IsotropicCode>(options.trials, options.threads, [&](std::uint64_t t) {
    Rng rng(options.seed, t);
    auto code = random_isotropic_code(query.n, q, query.k, rng);
    std::optional<IsotropicCode> out;
    if (stab_detects_profile(code, query.dx, query.dz)) out.emplace(std::move(code));
    return out;
  });
  if (!hit) return std::nullopt;
  return Witness{std::move(hit->second), DistancePair{query.dx, query.dz}, hit->first};
}

std::uint64_t count_witness_successes(const CssBoundQuery& query, const SearchOptions& options) {
  query.validate();
  const unsigned q = prime_field_order(query.q);
  const unsigned threads = resolve_threads(options.threads);
  std::atomic<std::uint64_t> next{1};
  std::atomic<std::uint64_t> hits{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    try {
      for (std::uint64_t t = next.fetch_add(1); t <= options.trials; t = next.fetch_add(1))
        if (css_trial(query, q, options.seed, t, nullptr)) hits.fetch_add(1);
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return hits.load();
}

}  // namespace agv
