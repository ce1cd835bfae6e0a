#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hsupport/geom.hpp"
#include "oracles.hpp"

using namespace hsupport;

TEST(Orientation, Examples) {
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {2, 0}), Orientation::Collinear);
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {1, 1}), Orientation::CounterClockwise);
  EXPECT_EQ(orientation({0, 0}, {1, 0}, {1, -1}), Orientation::Clockwise);
}

TEST(Orientation, SwappingLastTwoFlipsSign) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-50, 50);
  for (int i = 0; i < 2000; ++i) {
    const Point p{d(rng), d(rng)}, q{d(rng), d(rng)}, r{d(rng), d(rng)};
    EXPECT_EQ(static_cast<int>(orientation(p, q, r)), -static_cast<int>(orientation(p, r, q)));
  }
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance({0, 0}, {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(distance({0, 0}, {0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(distance({0, 0}, {1, 1}), std::sqrt(2.0));
}

TEST(Distance, TriangleInequality) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> d(-100, 100);
  for (int i = 0; i < 2000; ++i) {
    const Point a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)};
    EXPECT_LE(distance(a, c), distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST(Segment, RejectsDegenerateInput) {
  EXPECT_THROW(Segment({1, 1}, {1, 1}), InvalidArgument);
  EXPECT_THROW(Segment({0, 0}, {NAN, 1}), InvalidArgument);
  EXPECT_THROW(Segment({0, 0}, {INFINITY, 1}), InvalidArgument);
}

TEST(SegmentsConflict, Examples) {
  EXPECT_TRUE(segments_conflict({{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}));
  EXPECT_FALSE(segments_conflict({{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}));
  EXPECT_TRUE(segments_conflict({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));
}

TEST(SegmentsConflict, BoundaryCases) {
  // Interior passes through an endpoint of the other segment.
  EXPECT_TRUE(segments_conflict({{0, 0}, {2, 0}}, {{1, 0}, {1, 5}}));
  // Collinear, sharing one endpoint, pointing away: only the endpoint in common.
  EXPECT_FALSE(segments_conflict({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}));
  // Collinear, sharing one endpoint, overlapping.
  EXPECT_TRUE(segments_conflict({{0, 0}, {2, 0}}, {{0, 0}, {1, 0}}));
  // Same segment.
  EXPECT_TRUE(segments_conflict({{0, 0}, {2, 1}}, {{2, 1}, {0, 0}}));
  // Collinear and disjoint.
  EXPECT_FALSE(segments_conflict({{0, 0}, {1, 0}}, {{2, 0}, {3, 0}}));
  // Parallel, not collinear.
  EXPECT_FALSE(segments_conflict({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}));
  // T-junction missing by a hair.
  EXPECT_FALSE(segments_conflict({{0, 0}, {2, 0}}, {{1, 0.001}, {1, 5}}));
}

TEST(SegmentsConflict, MatchesCramerOracleOnRandomPairs) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> grid(0, 4);  // small grid: many touching cases
  int agreed = 0;
  for (int i = 0; i < 20000; ++i) {
    Point p[4];
    for (auto& q : p) q = {double(grid(rng)), double(grid(rng))};
    if (p[0] == p[1] || p[2] == p[3]) continue;
    const Segment s1(p[0], p[1]), s2(p[2], p[3]);
    const bool expect = oracle::segments_touch_off_endpoint(p[0], p[1], p[2], p[3]);
    ASSERT_EQ(segments_conflict(s1, s2), expect)
        << p[0].x << "," << p[0].y << " " << p[1].x << "," << p[1].y << " | " << p[2].x << ","
        << p[2].y << " " << p[3].x << "," << p[3].y;
    ASSERT_EQ(segments_conflict(s1, s2), segments_conflict(s2, s1));
    ++agreed;
  }
  EXPECT_GT(agreed, 10000);
}

TEST(SegmentsConflict, MatchesCramerOracleOnContinuousPairs) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> d(0, 10);
  for (int i = 0; i < 20000; ++i) {
    const Point a{d(rng), d(rng)}, b{d(rng), d(rng)}, c{d(rng), d(rng)}, e{d(rng), d(rng)};
    EXPECT_EQ(segments_conflict({a, b}, {c, e}), oracle::segments_touch_off_endpoint(a, b, c, e));
  }
}
