#include "agv/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "agv/bounds.hpp"
#include "agv/errors.hpp"

namespace agv {

namespace {

// 1-1/q computed one way vs. a caller's 2.0/3.0 can differ by an ulp. h is
// flat there, so anything this close to the peak evaluates to exactly 1.
constexpr double kPeakSlack = 1e-12;

void check_q(std::uint64_t q) {
  if (q < 2 || !is_prime_power(q))
    throw DomainError("q must be a prime power >= 2, got " + std::to_string(q));
}

double peak(std::uint64_t q) { return 1.0 - 1.0 / double(q); }

void check_delta(const char* name, double delta, std::uint64_t q) {
  if (!std::isfinite(delta) || delta < 0.0 || delta > peak(q) + kPeakSlack)
    throw DomainError(std::string(name) + " = " + std::to_string(delta) + " outside [0, 1-1/q]");
}

void check_rate(const char* name, double r) {
  if (!std::isfinite(r) || r < 0.0 || r > 1.0)
    throw DomainError(std::string(name) + " = " + std::to_string(r) + " outside [0, 1]");
}

std::string sig12(double v) {
  if (v == 0.0) return "0";
  int magnitude = int(std::floor(std::log10(std::fabs(v))));
  int places = std::max(0, 11 - magnitude);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

}  // namespace

double entropy_hq(double delta, std::uint64_t q) {
  check_q(q);
  check_delta("delta", delta, q);
  if (delta == 0.0) return 0.0;
  if (delta >= peak(q) - kPeakSlack) return 1.0;
  const double lq = std::log(double(q));
  return (delta * std::log(double(q - 1)) - delta * std::log(delta) - (1.0 - delta) * std::log1p(-delta)) / lq;
}

double hq_inverse(double y, std::uint64_t q) {
  check_q(q);
  if (!std::isfinite(y) || y < 0.0 || y > 1.0)
    throw DomainError("hq_inverse: y = " + std::to_string(y) + " outside [0, 1]");
  if (y == 0.0) return 0.0;
  if (y == 1.0) return peak(q);
  double lo = 0.0, hi = peak(q);
  // 200 halvings reach adjacent doubles well before the loop ends.
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (entropy_hq(mid, q) < y)
      lo = mid;
    else
      hi = mid;
  }
  // Pick whichever bracket end reproduces y more closely.
  return std::fabs(entropy_hq(lo, q) - y) <= std::fabs(entropy_hq(hi, q) - y) ? lo : hi;
}

void CssAsymptoticQuery::validate() const {
  check_q(q);
  check_rate("R1", r1);
  check_rate("R2", r2);
  if (r2 > r1) throw DomainError("CSS rates need R2 <= R1");
  check_delta("delta_x", delta_x, q);
  check_delta("delta_z", delta_z, q);
}

void StabAsymptoticQuery::validate() const {
  check_q(q);
  check_rate("R", r);
  check_delta("delta_x", delta_x, q);
  check_delta("delta_z", delta_z, q);
}

bool cor2_feasible(const CssAsymptoticQuery& query) {
  query.validate();
  return entropy_hq(query.delta_x, query.q) < 1.0 - query.r1 && entropy_hq(query.delta_z, query.q) < query.r2;
}

bool cor4_feasible(const StabAsymptoticQuery& query) {
  query.validate();
  return entropy_hq(query.delta_x, query.q) + entropy_hq(query.delta_z, query.q) < 1.0 - query.r;
}

std::vector<FrontierPoint> cor4_frontier(std::uint64_t q, double r, std::span<const double> delta_x_grid) {
  check_q(q);
  check_rate("R", r);
  std::vector<FrontierPoint> out;
  for (double dx : delta_x_grid) {
    const double budget = 1.0 - r - entropy_hq(dx, q);
    if (budget < 0.0) continue;
    double dz = hq_inverse(std::min(budget, 1.0), q);
    out.push_back({dx, std::clamp(dz, 0.0, peak(q)), r});
  }
  return out;
}

std::vector<double> delta_grid(std::uint64_t q, unsigned points) {
  check_q(q);
  std::vector<double> grid;
  if (points == 0) return grid;
  if (points == 1) return {0.0};
  grid.reserve(points);
  for (unsigned i = 0; i < points; ++i) grid.push_back(peak(q) * double(i) / double(points - 1));
  grid.back() = peak(q);
  return grid;
}

std::string frontier_csv(std::span<const FrontierPoint> points, std::uint64_t q) {
  std::string out = "delta_x,delta_z_max,R,q\n";
  for (const auto& p : points)
    out += sig12(p.delta_x) + "," + sig12(p.delta_z_max) + "," + sig12(p.r) + "," + std::to_string(q) + "\n";
  return out;
}

std::optional<RateInterval> cor2_optimal_r1(std::uint64_t q, double r, double delta_x, double delta_z) {
  check_q(q);
  check_rate("R", r);
  const double lo = std::max(entropy_hq(delta_z, q) + r, r);
  const double hi = std::min(1.0 - entropy_hq(delta_x, q), 1.0);
  if (!(lo < hi)) return std::nullopt;
  return RateInterval{lo, hi};
}

}  // namespace agv
