#include "agv/bounds.hpp"

#include <string>

#include "agv/errors.hpp"

namespace agv {

namespace {

BigInt ipow(std::uint64_t base, unsigned e) {
  BigInt b = base;
  return boost::multiprecision::pow(b, e);
}

void check_q(std::uint64_t q) {
  if (q < 2 || !is_prime_power(q))
    throw RangeError("q must be a prime power >= 2, got " + std::to_string(q));
}

void check_distance(const char* name, unsigned d, unsigned n) {
  if (d < 1 || d > n + 1)
    throw RangeError(std::string(name) + " must lie in [1, n+1], got " + std::to_string(d));
}

bool below_one(const Rational& r) {
  return boost::multiprecision::numerator(r) < boost::multiprecision::denominator(r);
}

}  // namespace

bool is_prime_power(std::uint64_t q) noexcept {
  if (q < 2) return false;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return true;  // q itself is prime
  while (q % p == 0) q /= p;
  return q == 1;
}

BigInt ball_sum(unsigned n, std::uint64_t q, int t) {
  if (t < 0 || unsigned(t) > n)
    throw RangeError("ball_sum: radius " + std::to_string(t) + " outside [0, " + std::to_string(n) + "]");
  if (q < 2) throw RangeError("ball_sum: q must be >= 2");
  BigInt sum = 0;
  BigInt binom = 1;  // C(n, i)
  BigInt power = 1;  // (q-1)^i
  for (unsigned i = 1; i <= unsigned(t); ++i) {
    binom = binom * (n - i + 1) / i;
    power *= (q - 1);
    sum += binom * power;
  }
  return sum;
}

BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) throw RangeError("gaussian_binomial: k > n");
  if (q < 2) throw RangeError("gaussian_binomial: q must be >= 2");
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= ipow(q, n - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

void CssBoundQuery::validate() const {
  check_q(q);
  if (n < 1) throw RangeError("n must be >= 1");
  if (k2 > k1 || k1 > n) throw RangeError("need 0 <= k2 <= k1 <= n");
  check_distance("dx", dx, n);
  check_distance("dz", dz, n);
}

void StabBoundQuery::validate() const {
  check_q(q);
  if (n < 1) throw RangeError("n must be >= 1");
  if (k > n) throw RangeError("need 0 <= k <= n");
  check_distance("dx", dx, n);
  check_distance("dz", dz, n);
}

std::string to_fraction(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

std::string to_decimal(const Rational& r, unsigned digits) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;
  const BigInt scale = ipow(10, digits);
  const BigInt scaled = (2 * num * scale + den) / (2 * den);
  const BigInt whole = scaled / scale;
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    std::string frac = BigInt(scaled % scale).str();
    out += "." + std::string(digits - frac.size(), '0') + frac;
  }
  return out;
}

std::string BoundReport::exact() const { return to_fraction(lhs); }

std::string BoundReport::decimal(unsigned digits) const { return to_decimal(lhs, digits); }

namespace {

BoundReport css_report(const CssBoundQuery& qr, const BigInt& ball_x, const BigInt& ball_z) {
  const BigInt denom = ipow(qr.q, qr.n) - 1;
  Rational bit_term(BigInt((ipow(qr.q, qr.k1) - ipow(qr.q, qr.k2)) * ball_x), denom);
  Rational phase_term(BigInt((ipow(qr.q, qr.n - qr.k2) - ipow(qr.q, qr.n - qr.k1)) * ball_z), denom);
  BoundReport rep;
  rep.lhs = bit_term + phase_term;
  rep.terms = {bit_term, phase_term};
  rep.feasible = below_one(rep.lhs);
  return rep;
}

}  // namespace

BoundReport css_gv_lhs(const CssBoundQuery& query) {
  query.validate();
  return css_report(query, ball_sum(query.n, query.q, int(query.dx) - 1),
                    ball_sum(query.n, query.q, int(query.dz) - 1));
}

BoundReport stab_gv_lhs(const StabBoundQuery& query) {
  query.validate();
  const auto& [q, n, k, dx, dz] = query;
  // (1 - q^-2k) / (1 - q^-2n) = (q^2k - 1) q^2n / ((q^2n - 1) q^2k)
  Rational ratio(BigInt((ipow(q, 2 * k) - 1) * ipow(q, 2 * n)), BigInt((ipow(q, 2 * n) - 1) * ipow(q, 2 * k)));
  Rational shrink(BigInt(1), ipow(q, n - k));
  Rational bx(ball_sum(n, q, int(dx) - 1));
  Rational bz(ball_sum(n, q, int(dz) - 1));
  BoundReport rep;
  rep.lhs = ratio * shrink * bx * bz;
  rep.terms = {ratio, shrink, bx, bz};
  rep.feasible = below_one(rep.lhs);
  return rep;
}

std::optional<unsigned> max_k_stab(unsigned n, std::uint64_t q, unsigned dx, unsigned dz) {
  StabBoundQuery query{q, n, n, dx, dz};
  query.validate();
  for (unsigned k = n; k >= 1; --k) {
    query.k = k;
    if (stab_gv_lhs(query).feasible) return k;
  }
  return std::nullopt;
}

std::optional<CssDims> best_css_params(unsigned n, std::uint64_t q, unsigned dx, unsigned dz) {
  CssBoundQuery query{q, n, 0, 0, dx, dz};
  query.validate();
  const BigInt ball_x = ball_sum(n, q, int(dx) - 1);
  const BigInt ball_z = ball_sum(n, q, int(dz) - 1);
  std::optional<CssDims> best;
  for (unsigned k1 = 1; k1 <= n; ++k1) {
    for (unsigned k2 = 0; k2 < k1; ++k2) {
      const unsigned net = k1 - k2;
      if (best && net <= best->k1 - best->k2) continue;
      query.k1 = k1;
      query.k2 = k2;
      if (css_report(query, ball_x, ball_z).feasible) best = CssDims{k1, k2};
    }
  }
  return best;
}

}  // namespace agv
