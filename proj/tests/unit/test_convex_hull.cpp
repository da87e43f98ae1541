#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "covgame/convex_hull.hpp"

using namespace covgame;

namespace {

/// Hull edges by brute force: (a, b) is an edge when no point lies strictly
/// to its right and every collinear point lies between a and b.
std::set<std::pair<std::size_t, std::size_t>> brute_force_edges(const std::vector<Vec2>& pts) {
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = 0; b < pts.size(); ++b) {
      if (a == b) continue;
      bool ok = true;
      for (std::size_t c = 0; c < pts.size() && ok; ++c) {
        if (c == a || c == b) continue;
        const double o = (pts[b].x - pts[a].x) * (pts[c].y - pts[a].y) - (pts[b].y - pts[a].y) * (pts[c].x - pts[a].x);
        if (o < 0.0) ok = false;
        if (o == 0.0) {
          const double t = (pts[c].x - pts[a].x) * (pts[b].x - pts[a].x) + (pts[c].y - pts[a].y) * (pts[b].y - pts[a].y);
          const double len2 = (pts[b].x - pts[a].x) * (pts[b].x - pts[a].x) + (pts[b].y - pts[a].y) * (pts[b].y - pts[a].y);
          if (t < 0.0 || t > len2) ok = false;
        }
      }
      if (ok) edges.insert({a, b});
    }
  }
  return edges;
}

std::vector<Vec2> disc_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec2> pts;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = std::sqrt(u(rng));
    const double th = 2.0 * M_PI * u(rng);
    pts.push_back({r * std::cos(th), r * std::sin(th)});
  }
  return pts;
}

}  // namespace

TEST(ConvexHull, SquareWithCentre) {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}};
  const auto h = convex_hull(std::span<const Vec2>(pts));
  EXPECT_FALSE(h.degenerate);
  ASSERT_EQ(h.vertices.size(), 4u);
  EXPECT_GT(polygon_area(h.vertices), 0.0);  // counterclockwise
  EXPECT_NEAR(polygon_area(h.vertices), 1.0, 1e-15);
  EXPECT_EQ(std::count(h.source.begin(), h.source.end(), 4u), 0);
}

TEST(ConvexHull, CollinearTripleIsDegenerateSegment) {
  const std::vector<Vec2> pts{{0, 0}, {2, 2}, {1, 1}};
  const auto h = convex_hull(std::span<const Vec2>(pts));
  EXPECT_TRUE(h.degenerate);
  ASSERT_EQ(h.vertices.size(), 2u);
  EXPECT_EQ(h.vertices[0], (Vec2{0, 0}));
  EXPECT_EQ(h.vertices[1], (Vec2{2, 2}));
  EXPECT_TRUE(h.contains({1.5, 1.5}));
  EXPECT_FALSE(h.contains({1.0, 1.2}));
}

TEST(ConvexHull, CollinearPointsOnEdgesAreDropped) {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 2}};
  const auto h = convex_hull(std::span<const Vec2>(pts));
  EXPECT_EQ(h.vertices.size(), 4u);
}

TEST(ConvexHull, TooFewPoints) {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}};
  EXPECT_THROW(convex_hull(std::span<const Vec2>(pts)), InvalidArgument);
}

TEST(ConvexHull, RandomDiscContainsAllAndBeatsEveryTriangle) {
  const auto pts = disc_points(1000, 3);
  const auto h = convex_hull(std::span<const Vec2>(pts));
  for (const auto& p : pts) EXPECT_TRUE(h.contains(p));
  const double area = polygon_area(h.vertices);
  const std::vector<Vec2> sub(pts.begin(), pts.begin() + 50);
  for (std::size_t a = 0; a < sub.size(); ++a)
    for (std::size_t b = a + 1; b < sub.size(); ++b)
      for (std::size_t c = b + 1; c < sub.size(); ++c)
        EXPECT_GE(area, std::abs(cross(sub[a], sub[b], sub[c])) / 2.0);
}

TEST(ConvexHull, MatchesBruteForceOrientationOracle) {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto pts = disc_points(50, seed);
    const auto h = convex_hull(std::span<const Vec2>(pts), 0.0);
    const auto edges = brute_force_edges(pts);
    ASSERT_EQ(edges.size(), h.source.size());
    for (std::size_t k = 0; k < h.source.size(); ++k)
      EXPECT_TRUE(edges.count({h.source[k], h.source[(k + 1) % h.source.size()]}));
  }
}

TEST(ConvexHull, ContainsRejectsOutsidePoints) {
  const std::vector<Vec2> pts{{0, 0}, {1, 0}, {0, 1}};
  const auto h = convex_hull(std::span<const Vec2>(pts));
  EXPECT_TRUE(h.contains({0.5, 0.5}));
  EXPECT_TRUE(h.contains({0.2, 0.2}));
  EXPECT_FALSE(h.contains({0.51, 0.51}));
  EXPECT_FALSE(h.contains({-0.01, 0.5}));
}
