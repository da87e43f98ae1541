#ifndef COVGAME_LINEAR_FEASIBILITY_HPP
#define COVGAME_LINEAR_FEASIBILITY_HPP

// Convex-combination feasibility: find weights w >= 0 with sum(w) = 1 and
// sum_k w_k * points[k] = target. Solved with a phase-one simplex on a dense
// tableau; a basic solution has at most dim + 1 nonzero weights.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "covgame/errors.hpp"

namespace covgame {

struct WeightedIndex {
  std::size_t index;
  double weight;
};

inline std::optional<std::vector<WeightedIndex>> convex_combination(std::span<const std::vector<double>> points,
                                                                    std::span<const double> target,
                                                                    double tol = 1e-9) {
  const std::size_t dim = target.size();
  const std::size_t n = points.size();
  if (n == 0) return std::nullopt;
  for (const auto& p : points)
    if (p.size() != dim) throw InvalidArgument("convex_combination: dimension mismatch");

  // Per-coordinate scaling keeps rows comparable.
  std::vector<double> scale(dim, 1.0);
  for (std::size_t r = 0; r < dim; ++r) {
    double m = std::abs(target[r]);
    for (const auto& p : points) m = std::max(m, std::abs(p[r]));
    if (m > 0.0) scale[r] = m;
  }

  const std::size_t rows = dim + 1;
  const std::size_t cols = n + rows + 1;  // structural, artificial, rhs
  std::vector<double> t((rows + 1) * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * cols + c]; };

  for (std::size_t r = 0; r < rows; ++r) {
    double rhs = r < dim ? target[r] / scale[r] : 1.0;
    const double sign = rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < n; ++c) at(r, c) = sign * (r < dim ? points[c][r] / scale[r] : 1.0);
    at(r, n + r) = 1.0;
    at(r, cols - 1) = sign * rhs;
  }
  // Objective row: minimise the sum of artificials, expressed in reduced costs.
  const std::size_t obj = rows;
  for (std::size_t c = 0; c < cols; ++c) {
    if (c >= n && c < n + rows) continue;
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += at(r, c);
    at(obj, c) = -s;
  }

  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = n + r;

  const double eps = 1e-12;
  std::size_t degenerate_run = 0;
  const std::size_t max_iter = 50 * (n + rows) + 1000;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    const bool bland = degenerate_run > 50;
    std::size_t enter = cols;
    double best = -eps;
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      if (at(obj, c) < best) {
        enter = c;
        if (bland) break;
        best = at(obj, c);
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    double ratio = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double a = at(r, enter);
      if (a > eps) {
        const double q = at(r, cols - 1) / a;
        if (leave == rows || q < ratio - 1e-15 || (q <= ratio + 1e-15 && basis[r] < basis[leave])) {
          leave = r;
          ratio = q;
        }
      }
    }
    if (leave == rows) break;  // unbounded direction cannot occur in phase one
    degenerate_run = ratio <= eps ? degenerate_run + 1 : 0;
    const double piv = at(leave, enter);
    for (std::size_t c = 0; c < cols; ++c) at(leave, c) /= piv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) at(r, c) -= f * at(leave, c);
    }
    basis[leave] = enter;
  }

  if (-at(obj, cols - 1) > tol) return std::nullopt;

  std::vector<WeightedIndex> out;
  double total = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < n && at(r, cols - 1) > eps) {
      out.push_back({basis[r], at(r, cols - 1)});
      total += at(r, cols - 1);
    }
  }
  if (out.empty() || total <= 0.0) return std::nullopt;
  for (auto& w : out) w.weight /= total;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });

  // Residual check in original units.
  for (std::size_t r = 0; r < dim; ++r) {
    double v = 0.0;
    for (const auto& w : out) v += w.weight * points[w.index][r];
    if (std::abs(v - target[r]) > 10.0 * tol * scale[r]) return std::nullopt;
  }
  return out;
}

}  // namespace covgame

#endif  // COVGAME_LINEAR_FEASIBILITY_HPP
