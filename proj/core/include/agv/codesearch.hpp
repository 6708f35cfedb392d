#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "agv/bounds.hpp"
#include "agv/galois.hpp"
#include "agv/rng.hpp"

namespace agv {

/// C2 inside C1 inside GF(p)^n, the ingredients of a CSS code.
class NestedPair {
 public:
  /// ShapeError if the spaces live in different ambient spaces or C2 is not
  /// contained in C1.
  NestedPair(Subspace c1, Subspace c2);

  const Subspace& c1() const noexcept { return c1_; }
  const Subspace& c2() const noexcept { return c2_; }
  std::size_t n() const noexcept { return c1_.ambient_dim(); }
  std::size_t k() const noexcept { return c1_.dim() - c2_.dim(); }

  friend bool operator==(const NestedPair&, const NestedPair&) = default;

 private:
  Subspace c1_;
  Subspace c2_;
};

/// A symplectic self-orthogonal subspace C of GF(p)^{2n}: the stabilizer of
/// an [[n, n - dim C]] code.
class IsotropicCode {
 public:
  /// ShapeError on odd ambient dimension or a non-isotropic space.
  explicit IsotropicCode(Subspace c);

  const Subspace& stabilizer() const noexcept { return c_; }
  const Subspace& normalizer() const noexcept { return normalizer_; }
  std::size_t n() const noexcept { return c_.ambient_dim() / 2; }
  std::size_t k() const noexcept { return n() - c_.dim(); }

  friend bool operator==(const IsotropicCode& a, const IsotropicCode& b) { return a.c_ == b.c_; }

 private:
  Subspace c_;
  Subspace normalizer_;  // C^perp_s
};

/// std::nullopt stands for "unbounded": no undetectable error exists.
using Distance = std::optional<unsigned>;

struct DistancePair {
  Distance dx;
  Distance dz;
  friend bool operator==(const DistancePair&, const DistancePair&) = default;
};

/// "inf" for unbounded, otherwise the decimal value.
std::string to_string(const Distance& d);

/// True iff d is unbounded or at least `required`.
inline bool meets(const Distance& d, unsigned required) { return !d || *d >= required; }

/// Undetectable-error tallies over all of B_n for fixed (n, q, k1, k2).
struct EnumerationReport {
  unsigned n = 0;
  unsigned q = 0;
  unsigned k1 = 0;
  unsigned k2 = 0;
  std::uint64_t total_pairs = 0;
  /// Indexed by error_index(e) - 1 over the q^n - 1 nonzero errors.
  std::vector<std::uint64_t> per_error_x;
  std::vector<std::uint64_t> per_error_z;

  /// Exact check of #B_x(e) (q^n - 1) = (q^k1 - q^k2) #B_n and
  /// #B_z(e) (q^n - 1) = (q^(n-k2) - q^(n-k1)) #B_n for every nonzero e.
  bool counting_identities_hold() const;
};

/// Base-q integer with entry 0 most significant.
std::uint64_t error_index(std::span<const Residue> e, unsigned q);

inline constexpr std::uint64_t kMaxEnumeratedPairs = 1'000'000;
inline constexpr std::uint64_t kMaxErrorPatterns = 10'000'000;
inline constexpr std::uint64_t kMaxCosetElements = std::uint64_t(1) << 26;

/// Walks every (C1, C2) in B_n once. SizeError past kMaxEnumeratedPairs,
/// UnsupportedFieldError for non-prime q.
EnumerationReport enumerate_nested_pairs(unsigned n, unsigned q, unsigned k1, unsigned k2);

/// dx = min weight over C1 \ C2, dz = min weight over C2^perp \ C1^perp.
DistancePair css_distances(const NestedPair& pair);

/// False iff e lies in C^perp_s \ C. DomainError for the zero vector.
bool stab_is_detectable(const IsotropicCode& code, const Vector& e);
bool stab_is_detectable(const IsotropicCode& code, std::span<const Residue> e);

/// True iff every nonzero (ex | ez) with wt(ex) <= dx-1 and wt(ez) <= dz-1 is
/// detectable.
bool stab_detects_profile(const IsotropicCode& code, unsigned dx, unsigned dz);

/// Uniform over B_n: C1 is the row space of a uniform full-rank k1 x n
/// matrix, and C2 the image of a uniform full-rank k2 x k1 matrix in C1.
NestedPair random_nested_pair(unsigned n, unsigned q, unsigned k1, unsigned k2, Rng& rng);
NestedPair random_nested_pair(unsigned n, unsigned q, unsigned k1, unsigned k2, std::uint64_t seed);

/// Grows C one vector at a time, each drawn uniformly from C^perp_s \ C.
/// The result is isotropic of dimension n - k but not uniform over all such
/// subspaces.
IsotropicCode random_isotropic_code(unsigned n, unsigned q, unsigned k, Rng& rng);
IsotropicCode random_isotropic_code(unsigned n, unsigned q, unsigned k, std::uint64_t seed);

using Code = std::variant<NestedPair, IsotropicCode>;

struct Witness {
  Code code;
  /// CSS: measured distances. Stabilizer: the verified (dx, dz) profile.
  DistancePair distances;
  /// 1-based.
  std::uint64_t trial_index = 0;
};

struct SearchOptions {
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
};

/// Trial t draws its code from Rng(seed, t), so the lowest successful index
/// does not depend on the thread count.
std::optional<Witness> gv_witness_search(const CssBoundQuery& query, const SearchOptions& options);
std::optional<Witness> gv_witness_search(const StabBoundQuery& query, const SearchOptions& options);

/// Number of trials in 1..options.trials whose code meets the query.
std::uint64_t count_witness_successes(const CssBoundQuery& query, const SearchOptions& options);

}  // namespace agv
