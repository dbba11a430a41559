#include <gtest/gtest.h>

#include <random>

#include "dadnet/bpr.hpp"

using namespace dadnet;

TEST(Bpr, TravelTimeLaw) {
  const bpr::ArcShape arc{1.0, 30.0, 100.0};
  EXPECT_DOUBLE_EQ(bpr::travel_time(arc, 0.0), 1.0 / 30.0);
  EXPECT_DOUBLE_EQ(bpr::travel_time(arc, 100.0), (1.0 / 30.0) * 1.15);
  EXPECT_DOUBLE_EQ(bpr::travel_time(arc, 200.0), (1.0 / 30.0) * (1.0 + 0.15 * 16.0));
}

TEST(Bpr, PiecesHitBreakpoints) {
  const bpr::ArcShape arc{0.5, 40.0, 250.0};
  const auto p = bpr::build_pieces(arc, 4);
  EXPECT_DOUBLE_EQ(p.width, 125.0);
  ASSERT_EQ(p.count(), 4);
  for (int r = 0; r <= 4; ++r) {
    const double y = r * p.width;
    EXPECT_NEAR(p.envelope(y), bpr::aggregate_time(arc, y), 1e-9 * std::max(1.0, p.heights[r]));
  }
  for (double xi : p.intercepts) EXPECT_LE(xi, 1e-12);
}

TEST(Bpr, EnvelopeIsChordInterpolant) {
  const bpr::ArcShape arc{1.0, 30.0, 100.0};
  const auto p = bpr::build_pieces(arc, 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(0.0, 200.0);
  for (int k = 0; k < 200; ++k) {
    const double y = U(rng);
    const int r = std::min(3, static_cast<int>(y / p.width));
    const double t = (y - r * p.width) / p.width;
    const double chord = (1 - t) * p.heights[r] + t * p.heights[r + 1];
    EXPECT_NEAR(p.envelope(y), chord, 1e-9 * std::max(1.0, chord));
    EXPECT_GE(p.envelope(y), bpr::aggregate_time(arc, y) - 1e-9);
  }
}

TEST(Bpr, RejectsBadInput) {
  EXPECT_THROW(bpr::build_pieces({1.0, 30.0, 100.0}, 0), InstanceError);
  EXPECT_THROW(bpr::travel_time({1.0, 30.0, 0.0}, 1.0), InstanceError);
}
