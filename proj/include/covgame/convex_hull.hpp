#ifndef COVGAME_CONVEX_HULL_HPP
#define COVGAME_CONVEX_HULL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "covgame/errors.hpp"

namespace covgame {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// (a - o) x (b - o)
inline double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Planar convex hull. `vertices` are counterclockwise without collinear
/// points; `source` holds the index of each vertex in the input.
struct Hull2 {
  std::vector<Vec2> vertices;
  std::vector<std::size_t> source;
  bool degenerate = false;  // fewer than three non-collinear points
  double tolerance = 0.0;   // absolute cross-product tolerance used

  bool contains(const Vec2& p) const {
    const std::size_t n = vertices.size();
    if (n == 0) return false;
    if (n == 1) return std::hypot(p.x - vertices[0].x, p.y - vertices[0].y) <= std::sqrt(tolerance);
    if (n == 2) {
      const Vec2& a = vertices[0];
      const Vec2& b = vertices[1];
      if (std::abs(cross(a, b, p)) > tolerance) return false;
      const double t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y));
      const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
      return t >= -tolerance && t <= len2 + tolerance;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (cross(vertices[k], vertices[(k + 1) % n], p) < -tolerance) return false;
    }
    return true;
  }
};

/// Andrew's monotone chain. `rel_tol` scales with the squared extent of the
/// point set; 1e-9 on a unit-sized cloud.
inline Hull2 convex_hull(std::span<const Vec2> points, double rel_tol = 1e-9) {
  if (points.size() < 3) throw InvalidArgument("convex hull needs at least three points");
  std::vector<std::size_t> order(points.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].x < points[b].x || (points[a].x == points[b].x && points[a].y < points[b].y);
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
              order.end());

  double extent = 0.0;
  for (const auto& p : points) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  Hull2 hull;
  hull.tolerance = rel_tol * std::max(extent * extent, 1e-300);

  if (order.size() == 1) {
    hull.vertices = {points[order[0]]};
    hull.source = {order[0]};
    hull.degenerate = true;
    return hull;
  }

  std::vector<std::size_t> chain(2 * order.size());
  std::size_t k = 0;
  const auto turns_left = [&](std::size_t o, std::size_t a, std::size_t b) {
    return cross(points[o], points[a], points[b]) > hull.tolerance;
  };
  for (std::size_t idx : order) {
    while (k >= 2 && !turns_left(chain[k - 2], chain[k - 1], idx)) --k;
    chain[k++] = idx;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower && !turns_left(chain[k - 2], chain[k - 1], *it)) --k;
    chain[k++] = *it;
  }
  chain.resize(k - 1);

  if (chain.size() < 3) {
    // All collinear: keep the two extreme points.
    hull.degenerate = true;
    hull.source = {order.front(), order.back()};
  } else {
    hull.source = chain;
  }
  for (std::size_t idx : hull.source) hull.vertices.push_back(points[idx]);
  return hull;
}

/// Signed polygon area (positive for counterclockwise order).
inline double polygon_area(std::span<const Vec2> poly) {
  double a = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Vec2& p = poly[k];
    const Vec2& q = poly[(k + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

}  // namespace covgame

#endif  // COVGAME_CONVEX_HULL_HPP
