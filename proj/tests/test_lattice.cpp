#include <gtest/gtest.h>

#include "lpp/lattice.hpp"

namespace {

using lpp::LatticePoint;

TEST(Lattice, SpaceTimeCoordinates) {
  EXPECT_EQ(lpp::phi({3, 5}), 8);
  EXPECT_EQ(lpp::phi({0, 0}), 0);
  EXPECT_EQ(lpp::psi({3, 5}), -2);
  EXPECT_EQ(lpp::psi({8, 0}), 8);
  for (std::int64_t n : {1, 7, 1000, 123456}) {
    EXPECT_EQ(lpp::phi({n, n}), 2 * n);
    EXPECT_EQ(lpp::psi({n, n}), 0);
  }
}

TEST(Lattice, RoundTrip) {
  for (std::int64_t x = -5; x <= 5; ++x) {
    for (std::int64_t y = -5; y <= 5; ++y) {
      const LatticePoint p{x, y};
      EXPECT_EQ(lpp::from_space_time(lpp::to_space_time(p)), p);
    }
  }
  EXPECT_THROW(lpp::from_space_time(3, 0), lpp::InvalidArgument);
}

TEST(Lattice, ScaledTarget) {
  EXPECT_EQ(lpp::scaled_target(4, 1.0), (LatticePoint{0, 8}));
  EXPECT_EQ(lpp::scaled_target(50, 0.5), (LatticePoint{40, 60}));
  EXPECT_EQ(lpp::scaled_target(1000, 0.0), (LatticePoint{1000, 1000}));
  EXPECT_EQ(lpp::transversal_unit(4), 4.0);
  EXPECT_EQ(lpp::transversal_unit(500), 100.0);
  EXPECT_THROW(lpp::scaled_target(4, 1.5), lpp::InvalidArgument);
  EXPECT_THROW(lpp::scaled_target(0, 0.0), lpp::InvalidArgument);
}

TEST(Lattice, CorridorMembership) {
  const lpp::Corridor diag{0, 40, 0, 0, 4};
  EXPECT_TRUE(lpp::corridor_contains(diag, {5, 5}));
  EXPECT_FALSE(lpp::corridor_contains(diag, {10, 1}));
  EXPECT_FALSE(lpp::corridor_contains(diag, {21, 21}));  // past end_level

  const lpp::Corridor thin{0, 40, 0, 0, 1};
  for (std::int64_t n = 0; n <= 20; ++n) EXPECT_TRUE(lpp::corridor_contains(thin, {n, n}));
  for (std::int64_t r = 2; r <= 38; r += 2) {
    EXPECT_FALSE(lpp::corridor_contains(thin, lpp::from_space_time(r, 2)));
    EXPECT_FALSE(lpp::corridor_contains(thin, lpp::from_space_time(r, -2)));
  }
}

TEST(Lattice, SlantedCorridorCrossSection) {
  // Center runs from psi 0 at level 0 to psi 10 at level 30.
  const lpp::Corridor c{0, 30, 0, 10, 2};
  for (std::int64_t r = 0; r <= 30; ++r) {
    const auto [lo, hi] = c.cross_section(r);
    for (std::int64_t q = -40; q <= 40; ++q) {
      if (!lpp::same_parity(q, r)) continue;
      const bool in = lpp::corridor_contains(c, lpp::from_space_time(r, q));
      EXPECT_EQ(in, q >= lo && q <= hi) << "r=" << r << " psi=" << q;
      // Exact rational check: |3q - r| <= 6 (center r/3, width 2).
      EXPECT_EQ(in, std::abs(3 * q - r) <= 6);
    }
  }
  const auto [lo, hi] = c.cross_section(31);
  EXPECT_GT(lo, hi);
  EXPECT_THROW((lpp::Corridor{5, 5, 0, 0, 1}.validate()), lpp::InvalidArgument);
  EXPECT_THROW((lpp::Corridor{0, 5, 0, 0, -1}.validate()), lpp::InvalidArgument);
}

TEST(Lattice, IntervalPoints) {
  EXPECT_EQ(lpp::interval_points({4, -2, 2}), (std::vector<LatticePoint>{{1, 3}, {2, 2}, {3, 1}}));
  EXPECT_EQ(lpp::interval_points({0, 0, 0}), (std::vector<LatticePoint>{{0, 0}}));
  EXPECT_EQ(lpp::interval_points({3, -1, 1}), (std::vector<LatticePoint>{{1, 2}, {2, 1}}));
  EXPECT_TRUE(lpp::interval_points({3, 1, -1}).empty());
  EXPECT_THROW(lpp::interval_points({4, -1, 1}), lpp::InvalidArgument);
  const auto snapped = lpp::make_interval(4, -3, 3);
  EXPECT_EQ(snapped.psi_lo, -2);
  EXPECT_EQ(snapped.psi_hi, 2);
  EXPECT_EQ(snapped.size(), 3);
}

TEST(Lattice, ScaledInterval) {
  // N = 500: unit 100, s in [0, 0.5] covers offsets 0..50, psi in [-100, 0].
  const auto iv = lpp::scaled_interval(500, 0.0, 0.5);
  EXPECT_EQ(iv.level, 1000);
  EXPECT_EQ(iv.psi_lo, -100);
  EXPECT_EQ(iv.psi_hi, 0);
  EXPECT_EQ(iv.size(), 51);
}

}  // namespace
