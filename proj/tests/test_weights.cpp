#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "lpp/stats.hpp"
#include "lpp/weights.hpp"

namespace {

using lpp::LatticePoint;
using lpp::WeightField;

TEST(Weights, InverseCdf) {
  EXPECT_EQ(lpp::exp_inverse_cdf(0.0), 0.0);
  EXPECT_NEAR(lpp::exp_inverse_cdf(0.5), 0.6931472, 1e-7);
  EXPECT_NEAR(lpp::exp_inverse_cdf(1.0 - std::exp(-2.0)), 2.0, 1e-12);
  EXPECT_THROW(lpp::exp_inverse_cdf(1.0), lpp::InvalidArgument);
  EXPECT_THROW(lpp::exp_inverse_cdf(-0.1), lpp::InvalidArgument);
}

// Reference values from an independent implementation of the documented
// construction (Python, arbitrary-precision integers).
TEST(Weights, BitExactConstruction) {
  EXPECT_EQ(lpp::detail::site_bits(42, 0, 0), 0xa759ea27d4727622ULL);
  EXPECT_EQ(lpp::detail::site_bits(42, 3, -7), 0xc09431fde7d97a95ULL);
  EXPECT_EQ(lpp::detail::site_bits(42, -1, 5), 0x2a285ab51d23c1c5ULL);
  EXPECT_EQ(lpp::detail::site_bits(7, 1000, 1000), 0xb506050260c0556dULL);
  EXPECT_DOUBLE_EQ(WeightField{42}.weight_at({0, 0}), 1.060495277601846);
  EXPECT_DOUBLE_EQ(WeightField{42}.weight_at({3, -7}), 1.3953806386991128);
  EXPECT_DOUBLE_EQ(WeightField{42}.weight_at({-1, 5}), 0.17993830876622496);
  EXPECT_DOUBLE_EQ(WeightField{7}.weight_at({1000, 1000}), 1.2280028992430698);
}

TEST(Weights, ZeroPatternRemapped) {
  // seed 0 at the origin hashes to the all-zero pattern, i.e. u = 0.
  EXPECT_EQ(lpp::detail::site_bits(0, 0, 0), 0u);
  EXPECT_EQ(WeightField{0}.weight_at({0, 0}), std::numeric_limits<double>::denorm_min());
  EXPECT_GT(lpp::detail::weight_from_bits(0), 0.0);
}

TEST(Weights, Deterministic) {
  const WeightField f{123};
  for (std::int64_t x = -20; x <= 20; ++x) {
    const LatticePoint p{x, 3 * x + 1};
    EXPECT_EQ(f.weight_at(p), f.weight_at(p));
    EXPECT_EQ(f.weight_at(p), WeightField{123}.weight_at(p));
    EXPECT_GT(f.weight_at(p), 0.0);
  }
  EXPECT_THROW(f.weight_at({std::int64_t{1} << 31, 0}), lpp::InvalidArgument);
}

TEST(Weights, DiagonalBulk) {
  const WeightField f{99};
  const auto one = lpp::diagonal_weights(f, 10, 4, 4);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], f.weight_at({7, 3}));

  const auto bulk = lpp::diagonal_weights(f, 11, -31, 41);
  ASSERT_EQ(bulk.size(), 37u);
  for (std::size_t k = 0; k < bulk.size(); ++k) {
    EXPECT_EQ(bulk[k], f.weight_at(lpp::from_space_time(11, -31 + 2 * static_cast<std::int64_t>(k))));
  }
  EXPECT_TRUE(lpp::diagonal_weights(f, 10, 6, 4).empty());
  EXPECT_THROW(lpp::diagonal_weights(f, 10, 3, 5), lpp::InvalidArgument);
}

std::vector<double> rectangle(const WeightField& f, std::int64_t side) {
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>(side * side));
  for (std::int64_t x = 0; x < side; ++x) {
    for (std::int64_t y = 0; y < side; ++y) w.push_back(f.weight_at({x, y}));
  }
  return w;
}

// Monte Carlo oracle: Exp(1) has mean 1 and variance 1; over 10^6 sites the
// standard errors are 1e-3 and about 2e-3.
TEST(Weights, MomentsOverMillionSites) {
  const auto w = rectangle(WeightField{2024}, 1000);
  EXPECT_NEAR(lpp::stats::mean(w), 1.0, 0.005);
  EXPECT_NEAR(lpp::stats::variance(w), 1.0, 0.01);
}

// KS 99% critical value at n = 10^6 is about 0.00163.
TEST(Weights, KolmogorovSmirnovAgainstExp1) {
  for (std::uint64_t seed : {1ULL, 77ULL}) {
    const auto w = rectangle(WeightField{seed}, 1000);
    const double d = lpp::stats::ks_statistic(w, [](double x) { return 1.0 - std::exp(-x); });
    EXPECT_LT(d, 0.002) << "seed " << seed;
  }
  // A shifted rectangle in the negative quadrant.
  std::vector<double> w;
  const WeightField f{5};
  for (std::int64_t x = -1000; x < 0; ++x) {
    for (std::int64_t y = -500; y < 500; ++y) w.push_back(f.weight_at({x, y}));
  }
  EXPECT_LT(lpp::stats::ks_statistic(w, [](double x) { return 1.0 - std::exp(-x); }), 0.002);
}

TEST(Weights, DistinctSeedsUncorrelated) {
  // Adjacent seeds too: the key is mixed again after the seed is applied.
  for (auto [a, b] : {std::pair<std::uint64_t, std::uint64_t>{1, 2}, {1000, 1001}, {7, 0x8000000000000007ULL}}) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::int64_t i = 0; i < 100000; ++i) {
      const LatticePoint p{i % 317, i / 317};
      x.push_back(WeightField{a}.weight_at(p));
      y.push_back(WeightField{b}.weight_at(p));
    }
    const auto c = lpp::stats::covariance(x, y);
    const double corr = c.covariance / std::sqrt(lpp::stats::variance(x) * lpp::stats::variance(y));
    EXPECT_NEAR(corr, 0.0, 0.01) << a << " vs " << b;
  }
}

TEST(Weights, ReplicaSeedsDistinct) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t k = 0; k < 1000; ++k) s.push_back(lpp::replica_seed(7, k));
  std::sort(s.begin(), s.end());
  EXPECT_EQ(std::unique(s.begin(), s.end()), s.end());
  EXPECT_NE(lpp::stream_seed(7, 0), lpp::stream_seed(7, 1));
  EXPECT_NE(lpp::stream_seed(7, 0), lpp::replica_seed(7, 0));
}

TEST(Weights, Overrides) {
  lpp::OverriddenField<> f{WeightField{3}};
  f.set({2, 2}, 50.0);
  EXPECT_EQ(f.weight_at({2, 2}), 50.0);
  EXPECT_EQ(f.weight_at({2, 3}), WeightField{3}.weight_at({2, 3}));
  std::vector<double> out(3);
  f.fill_diagonal(4, -2, 2, out);
  EXPECT_EQ(out[1], 50.0);
  EXPECT_EQ(out[0], WeightField{3}.weight_at({1, 3}));
}

}  // namespace
