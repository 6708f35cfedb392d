#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace agv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

bool is_prime_power(std::uint64_t q) noexcept;

/// Number of nonzero vectors of GF(q)^n with weight <= t:
/// sum_{i=1}^{t} C(n,i) (q-1)^i. Zero for t = 0. RangeError unless 0 <= t <= n.
BigInt ball_sum(unsigned n, std::uint64_t q, int t);

/// Number of k-dimensional subspaces of GF(q)^n. RangeError if k > n.
BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);

/// Parameters for the CSS bound. An [[n, k1-k2, dx, dz]]_q code detects every
/// bit error of weight <= dx-1 and every phase error of weight <= dz-1.
struct CssBoundQuery {
  std::uint64_t q = 2;
  unsigned n = 1;
  unsigned k1 = 0;
  unsigned k2 = 0;
  unsigned dx = 1;
  unsigned dz = 1;

  /// Throws RangeError when a field is out of range or q is not a prime power.
  void validate() const;
};

struct StabBoundQuery {
  std::uint64_t q = 2;
  unsigned n = 1;
  unsigned k = 0;
  unsigned dx = 1;
  unsigned dz = 1;

  void validate() const;
};

/// Exact left-hand side of a GV-type existence condition.
struct BoundReport {
  Rational lhs;
  /// CSS: the bit-error and phase-error addends.
  /// Stabilizer: the factors (1-q^-2k)/(1-q^-2n), q^-(n-k), ball(dx-1), ball(dz-1).
  std::vector<Rational> terms;
  /// lhs < 1, decided exactly.
  bool feasible = false;

  std::string exact() const;
  std::string decimal(unsigned digits = 6) const;
};

/// "num/den" in lowest terms, e.g. "2304/4095" or "0/1".
std::string to_fraction(const Rational& r);

/// Round-half-up decimal rendering with exactly `digits` fractional places.
std::string to_decimal(const Rational& r, unsigned digits);

BoundReport css_gv_lhs(const CssBoundQuery& query);
BoundReport stab_gv_lhs(const StabBoundQuery& query);

/// Largest k in [1, n] for which the stabilizer bound is feasible.
std::optional<unsigned> max_k_stab(unsigned n, std::uint64_t q, unsigned dx, unsigned dz);

struct CssDims {
  unsigned k1 = 0;
  unsigned k2 = 0;
  friend bool operator==(const CssDims&, const CssDims&) = default;
};

/// Feasible (k1, k2) with k1 > k2 maximizing k1 - k2; ties go to the smallest
/// k1, then the smallest k2.
std::optional<CssDims> best_css_params(unsigned n, std::uint64_t q, unsigned dx, unsigned dz);

}  // namespace agv
