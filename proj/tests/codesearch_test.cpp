#include "agv/codesearch.hpp"

#include <cmath>
#include <map>
#include <random>

#include "gtest/gtest.h"

#include "agv/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace agv;

namespace {

std::vector<std::vector<unsigned>> rows_of(const Subspace& s) {
  std::vector<std::vector<unsigned>> out;
  for (std::size_t i = 0; i < s.dim(); ++i) out.emplace_back(s.row(i).begin(), s.row(i).end());
  return out;
}

oracle::VecSet as_set(const Subspace& s) {
  return oracle::span(rows_of(s), s.field().order(), unsigned(s.ambient_dim()));
}

// Undetectable-error check straight from the definition, over element sets.
bool profile_by_definition(const IsotropicCode& code, unsigned dx, unsigned dz) {
  const unsigned p = code.stabilizer().field().order();
  const unsigned n = unsigned(code.n());
  const auto c = as_set(code.stabilizer());
  const auto normalizer = oracle::symplectic_dual(c, p, 2 * n);
  for (oracle::Code e = 1; e < oracle::ipow(p, 2 * n); ++e) {
    auto v = oracle::decode(e, p, 2 * n);
    unsigned wx = 0, wz = 0;
    for (unsigned i = 0; i < n; ++i) {
      wx += v[i] != 0;
      wz += v[n + i] != 0;
    }
    if (wx > dx - 1 || wz > dz - 1) continue;
    if (normalizer.count(e) && !c.count(e)) return false;
  }
  return true;
}

Vector bits(std::vector<Residue> v) { return Vector(Field(2), std::move(v)); }

}  // namespace

TEST(enumerate_nested_pairs, small_examples) {
  auto rep = enumerate_nested_pairs(3, 2, 2, 1);
  EXPECT_EQ(rep.total_pairs, 21u);
  ASSERT_EQ(rep.per_error_x.size(), 7u);
  for (auto c : rep.per_error_x) EXPECT_EQ(c, 6u);
  for (auto c : rep.per_error_z) EXPECT_EQ(c, 6u);
  EXPECT_TRUE(rep.counting_identities_hold());

  EXPECT_EQ(enumerate_nested_pairs(2, 2, 1, 0).total_pairs, 3u);

  rep = enumerate_nested_pairs(2, 2, 1, 1);
  EXPECT_EQ(rep.total_pairs, 3u);
  for (auto c : rep.per_error_x) EXPECT_EQ(c, 0u);
  EXPECT_TRUE(rep.counting_identities_hold());
}

TEST(enumerate_nested_pairs, counting_identities_and_set_oracle) {
  for (auto [q, n, k1, k2] : {std::array{2u, 3u, 2u, 1u}, std::array{2u, 4u, 2u, 1u}, std::array{2u, 4u, 3u, 1u},
                              std::array{3u, 3u, 2u, 1u}, std::array{2u, 4u, 4u, 0u}, std::array{3u, 2u, 1u, 0u}}) {
    const auto rep = enumerate_nested_pairs(n, q, k1, k2);
    EXPECT_TRUE(rep.counting_identities_hold()) << q << n << k1 << k2;
    EXPECT_EQ(BigInt(rep.total_pairs), gaussian_binomial(n, k1, q) * gaussian_binomial(k1, k2, q));
    const auto expect = oracle::lemma_counts(q, n, k1, k2);
    EXPECT_EQ(rep.total_pairs, expect.total);
    EXPECT_EQ(rep.per_error_x, expect.x);
    EXPECT_EQ(rep.per_error_z, expect.z);
    // Constant over all nonzero errors.
    EXPECT_EQ(std::count(rep.per_error_x.begin(), rep.per_error_x.end(), rep.per_error_x.front()),
              std::ptrdiff_t(rep.per_error_x.size()));
  }
}

TEST(enumerate_nested_pairs, errors) {
  EXPECT_THROW(enumerate_nested_pairs(3, 4, 2, 1), UnsupportedFieldError);
  EXPECT_THROW(enumerate_nested_pairs(12, 2, 6, 3), SizeError);
  EXPECT_THROW(enumerate_nested_pairs(3, 2, 1, 2), RangeError);
}

TEST(css_distances, steane_ingredients) {
  const Subspace hamming = fixtures::hamming_7_4();
  const NestedPair pair(hamming, dual_basis(hamming));
  const auto d = css_distances(pair);
  EXPECT_EQ(d.dx, 3u);
  EXPECT_EQ(d.dz, 3u);
  EXPECT_EQ(oracle::min_weight_outside(as_set(pair.c1()), as_set(pair.c2()), 2, 7), 3u);
}

TEST(css_distances, repetition_over_zero) {
  const Field f(2);
  const NestedPair pair(row_space(f, 3, {1, 1, 1}), Subspace::zero(f, 3));
  const auto d = css_distances(pair);
  EXPECT_EQ(d.dx, 3u);
  EXPECT_EQ(d.dz, 1u);
}

TEST(css_distances, equal_spaces_are_unbounded) {
  const Subspace c = fixtures::hamming_7_4();
  const auto d = css_distances(NestedPair(c, c));
  EXPECT_EQ(d.dx, std::nullopt);
  EXPECT_EQ(d.dz, std::nullopt);
  EXPECT_EQ(to_string(d.dx), "inf");
}

TEST(css_distances, agrees_with_definition_oracle) {
  std::mt19937_64 seeds(17);
  for (unsigned q : {2u, 3u}) {
    for (int trial = 0; trial < 60; ++trial) {
      const unsigned n = 1 + unsigned(seeds() % (q == 2 ? 6 : 4));
      const unsigned k1 = unsigned(seeds() % (n + 1));
      const unsigned k2 = unsigned(seeds() % (k1 + 1));
      const auto pair = random_nested_pair(n, q, k1, k2, seeds());
      const auto d = css_distances(pair);
      const auto c1 = as_set(pair.c1()), c2 = as_set(pair.c2());
      const unsigned ox = oracle::min_weight_outside(c1, c2, q, n);
      const unsigned oz = oracle::min_weight_outside(oracle::dual(c2, q, n), oracle::dual(c1, q, n), q, n);
      EXPECT_EQ(d.dx, ox == 0 ? Distance{} : Distance{ox});
      EXPECT_EQ(d.dz, oz == 0 ? Distance{} : Distance{oz});
    }
  }
}

TEST(css_distances, guard) {
  const Field f(2);
  std::vector<Residue> rows;
  for (unsigned i = 0; i < 27; ++i) {
    std::vector<Residue> r(30, 0);
    r[i] = 1;
    rows.insert(rows.end(), r.begin(), r.end());
  }
  const NestedPair pair(row_space(f, 30, rows), Subspace::zero(f, 30));
  EXPECT_THROW(css_distances(pair), SizeError);
}

TEST(nested_pair, rejects_non_nested) {
  const Field f(2);
  EXPECT_THROW(NestedPair(row_space(f, 3, {1, 1, 0}), row_space(f, 3, {0, 1, 1})), ShapeError);
  EXPECT_THROW(NestedPair(Subspace::full(f, 3), Subspace::zero(f, 4)), ShapeError);
}

TEST(isotropic_code, rejects_non_isotropic) {
  const Field f(2);
  EXPECT_THROW(IsotropicCode(Subspace::full(f, 2)), ShapeError);
  EXPECT_THROW(IsotropicCode(Subspace::zero(f, 3)), ShapeError);
}

TEST(five_qubit_code, isotropy_and_detection) {
  const IsotropicCode code = fixtures::five_qubit_code();
  EXPECT_EQ(code.n(), 5u);
  EXPECT_EQ(code.k(), 1u);
  EXPECT_TRUE(is_isotropic(code.stabilizer()));

  EXPECT_TRUE(stab_is_detectable(code, code.stabilizer().basis()[0]));
  EXPECT_FALSE(stab_is_detectable(code, bits({1, 1, 1, 1, 1, 0, 0, 0, 0, 0})));
  EXPECT_TRUE(stab_is_detectable(code, bits({1, 0, 0, 0, 0, 0, 0, 0, 0, 0})));
  EXPECT_THROW(stab_is_detectable(code, Vector::zero(Field(2), 10)), DomainError);

  EXPECT_TRUE(stab_detects_profile(code, 5, 1));
  EXPECT_TRUE(stab_detects_profile(code, 1, 5));
  EXPECT_FALSE(stab_detects_profile(code, 6, 1));
  EXPECT_FALSE(stab_detects_profile(code, 1, 6));
  // Mixed errors up to weight 3 each: not claimed either way, just recorded.
  RecordProperty("profile_4_4", stab_detects_profile(code, 4, 4) ? "true" : "false");
}

TEST(stab_detects_profile, matches_definition_everywhere) {
  const IsotropicCode code = fixtures::five_qubit_code();
  for (unsigned dx = 1; dx <= 6; ++dx)
    for (unsigned dz = 1; dz <= 6; ++dz)
      EXPECT_EQ(stab_detects_profile(code, dx, dz), profile_by_definition(code, dx, dz)) << dx << " " << dz;

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const unsigned q = seed % 2 ? 3 : 2;
    const unsigned n = q == 2 ? 4 : 3;
    const auto c = random_isotropic_code(n, q, unsigned(seed % n), seed);
    for (unsigned dx = 1; dx <= n + 1; ++dx)
      for (unsigned dz = 1; dz <= n + 1; ++dz)
        EXPECT_EQ(stab_detects_profile(c, dx, dz), profile_by_definition(c, dx, dz));
  }
}

TEST(stab_detects_profile, range_and_guard) {
  const IsotropicCode code = fixtures::five_qubit_code();
  EXPECT_THROW(stab_detects_profile(code, 0, 1), RangeError);
  EXPECT_THROW(stab_detects_profile(code, 7, 1), RangeError);
  const auto big = random_isotropic_code(30, 2, 10, 1);
  EXPECT_THROW(stab_detects_profile(big, 8, 8), SizeError);
}

TEST(random_nested_pair, shape_and_determinism) {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto a = random_nested_pair(12, 2, 7, 4, seed);
    EXPECT_EQ(a.c1().dim(), 7u);
    EXPECT_EQ(a.c2().dim(), 4u);
    EXPECT_TRUE(a.c1().contains(a.c2()));
    EXPECT_EQ(a, random_nested_pair(12, 2, 7, 4, seed));
  }
  EXPECT_NE(random_nested_pair(12, 2, 7, 4, 1), random_nested_pair(12, 2, 7, 4, 2));
  EXPECT_THROW(random_nested_pair(4, 4, 2, 1, 0), UnsupportedFieldError);
  EXPECT_THROW(random_nested_pair(4, 2, 1, 2, 0), RangeError);
}

TEST(random_nested_pair, uniform_over_all_pairs) {
  std::map<std::pair<oracle::VecSet, oracle::VecSet>, int> freq;
  const int draws = 10000;
  for (std::uint64_t s = 0; s < draws; ++s) {
    const auto pair = random_nested_pair(3, 2, 2, 1, s);
    ++freq[{as_set(pair.c1()), as_set(pair.c2())}];
  }
  ASSERT_EQ(freq.size(), 21u);
  const double p = 1.0 / 21, mean = draws * p, sigma = std::sqrt(draws * p * (1 - p));
  double chi2 = 0;
  for (const auto& [_, count] : freq) {
    EXPECT_LT(std::fabs(count - mean), 5 * sigma);
    chi2 += (count - mean) * (count - mean) / mean;
  }
  // 20 degrees of freedom; 45.3 is the 0.999 quantile.
  EXPECT_LT(chi2, 45.3);
}

TEST(random_isotropic_code, shape_and_determinism) {
  const auto c = random_isotropic_code(5, 2, 1, 3);
  EXPECT_EQ(c.stabilizer().dim(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(symplectic_product(Field(2), c.stabilizer().row(i), c.stabilizer().row(j)), 0);
  EXPECT_EQ(random_isotropic_code(5, 2, 5, 3).stabilizer(), Subspace::zero(Field(2), 10));
  EXPECT_EQ(random_isotropic_code(6, 3, 2, 8), random_isotropic_code(6, 3, 2, 8));
  EXPECT_EQ(random_isotropic_code(6, 5, 0, 8).stabilizer().dim(), 6u);
  EXPECT_THROW(random_isotropic_code(4, 9, 1, 0), UnsupportedFieldError);
}

TEST(gv_witness_search, css_example_and_success_rate) {
  const CssBoundQuery query{2, 12, 7, 5, 2, 2};
  const auto w = gv_witness_search(query, {100, 1, 1});
  ASSERT_TRUE(w);
  const auto& pair = std::get<NestedPair>(w->code);
  EXPECT_EQ(css_distances(pair), w->distances);
  EXPECT_TRUE(meets(w->distances.dx, 2) && meets(w->distances.dz, 2));

  const double rate = double(count_witness_successes(query, {1000, 7, 0})) / 1000;
  const double floor = 1.0 - 2304.0 / 4095.0;
  EXPECT_GE(rate, floor - 3 * std::sqrt(floor * (1 - floor) / 1000));
}

TEST(gv_witness_search, trivial_distances_succeed_immediately) {
  auto w = gv_witness_search(CssBoundQuery{3, 6, 4, 1, 1, 1}, {5, 9, 1});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->trial_index, 1u);
  w = gv_witness_search(StabBoundQuery{2, 6, 2, 1, 1}, {5, 9, 1});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->trial_index, 1u);
}

TEST(gv_witness_search, impossible_css_is_absent) {
  EXPECT_FALSE(gv_witness_search(CssBoundQuery{2, 4, 4, 0, 3, 3}, {100, 1, 1}));
}

TEST(gv_witness_search, independent_of_thread_count) {
  const CssBoundQuery css{2, 10, 6, 3, 2, 2};
  const auto one = gv_witness_search(css, {200, 5, 1});
  ASSERT_TRUE(one);
  for (unsigned threads : {2u, 4u, 8u}) {
    const auto many = gv_witness_search(css, {200, 5, threads});
    ASSERT_TRUE(many);
    EXPECT_EQ(many->trial_index, one->trial_index);
    EXPECT_EQ(std::get<NestedPair>(many->code), std::get<NestedPair>(one->code));
  }
  EXPECT_EQ(count_witness_successes(css, {300, 5, 1}), count_witness_successes(css, {300, 5, 4}));
}

TEST(gv_witness_search, stabilizer_witness_reverifies) {
  const StabBoundQuery query{2, 10, 2, 2, 2};
  ASSERT_TRUE(stab_gv_lhs(query).feasible);
  const auto w = gv_witness_search(query, {200, 3, 2});
  ASSERT_TRUE(w);
  const auto& code = std::get<IsotropicCode>(w->code);
  EXPECT_EQ(code.k(), 2u);
  EXPECT_TRUE(stab_detects_profile(code, 2, 2));
  EXPECT_EQ(w->distances, (DistancePair{2u, 2u}));
  const auto again = gv_witness_search(query, {200, 3, 1});
  ASSERT_TRUE(again);
  EXPECT_EQ(again->trial_index, w->trial_index);
}
