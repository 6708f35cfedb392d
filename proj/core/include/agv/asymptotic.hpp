#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agv {

/// q-ary entropy h_q(d) = d log_q(q-1) - d log_q d - (1-d) log_q(1-d) on its
/// increasing branch [0, 1-1/q]. Outside that interval: DomainError.
double entropy_hq(double delta, std::uint64_t q);

/// The delta in [0, 1-1/q] with h_q(delta) = y, by bisection. y must be in [0, 1].
double hq_inverse(double y, std::uint64_t q);

/// Rates (R1, R2) of the nested pair C2 in C1 with relative distances.
struct CssAsymptoticQuery {
  std::uint64_t q = 2;
  double r1 = 0;
  double r2 = 0;
  double delta_x = 0;
  double delta_z = 0;

  /// DomainError unless 0 <= r2 <= r1 <= 1 and both deltas lie in [0, 1-1/q].
  void validate() const;
};

struct StabAsymptoticQuery {
  std::uint64_t q = 2;
  double r = 0;
  double delta_x = 0;
  double delta_z = 0;

  void validate() const;
};

/// h_q(dx) < 1 - R1 and h_q(dz) < R2.
bool cor2_feasible(const CssAsymptoticQuery& query);

/// h_q(dx) + h_q(dz) < 1 - R.
bool cor4_feasible(const StabAsymptoticQuery& query);

struct FrontierPoint {
  double delta_x = 0;
  double delta_z_max = 0;
  double r = 0;
};

/// Boundary h_q(dx) + h_q(dz) = 1 - r sampled at the given dx values. Grid
/// points with h_q(dx) > 1 - r have no admissible dz and are dropped.
std::vector<FrontierPoint> cor4_frontier(std::uint64_t q, double r, std::span<const double> delta_x_grid);

/// `points` evenly spaced values covering [0, 1-1/q]; a single point is {0}.
std::vector<double> delta_grid(std::uint64_t q, unsigned points);

/// CSV with header `delta_x,delta_z_max,R,q`, 12 significant digits, '\n' endings.
std::string frontier_csv(std::span<const FrontierPoint> points, std::uint64_t q);

struct RateInterval {
  double lo = 0;
  double hi = 0;
};

/// Open interval of R1 (with R2 = R1 - r) on which the CSS conditions hold:
/// h_q(dz) + r < R1 < 1 - h_q(dx). Empty exactly when the stabilizer
/// condition fails at the same (r, dx, dz).
std::optional<RateInterval> cor2_optimal_r1(std::uint64_t q, double r, double delta_x, double delta_z);

}  // namespace agv
