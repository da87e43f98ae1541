#ifndef COVGAME_UTILITY_HPP
#define COVGAME_UTILITY_HPP

// Coverage utility of each SBS: the density-weighted integral of
// log2(1 + SINR) over the SBS coverage disc, evaluated in polar coordinates
// centred on the ground projection of the SBS.
//
// The integrand is piecewise smooth: every interferer contributes only inside
// its own range circle. The quadrature therefore splits each ray at the
// points where it crosses an interferer circle, and splits the angular range
// at the tangent and circle-intersection directions. Angular panels use a
// cubic smoothstep substitution so the square-root behaviour at tangent
// directions does not slow down Gauss-Legendre convergence. Without any
// breakpoint the angular rule is the periodic trapezoid.

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "covgame/errors.hpp"
#include "covgame/geometry_channel.hpp"
#include "covgame/quadrature.hpp"

namespace covgame {

struct QuadratureSpec {
  int radial_nodes = 64;      // nodes along each ray, spread over its panels
  int angular_nodes = 128;    // rays around the disc, spread over angular panels
  double target_rel_tol = 1e-6;
  int max_refinements = 3;    // doublings before giving up

  friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

inline void validate(const QuadratureSpec& q) {
  if (q.radial_nodes < 2) throw InvalidArgument("radial_nodes must be >= 2");
  if (q.angular_nodes < 4) throw InvalidArgument("angular_nodes must be >= 4");
  if (!(q.target_rel_tol > 0.0 && q.target_rel_tol < 1.0))
    throw InvalidArgument("target_rel_tol must lie in (0, 1)");
  if (q.max_refinements < 1) throw InvalidArgument("max_refinements must be >= 1");
}

namespace detail {

inline constexpr int kMinPanelNodes = 4;

/// Flattened quadrature nodes of one player at one refinement level.
/// `cross` is node-major with one entry per SBS (zero for the player itself).
struct CoverageNodes {
  std::vector<double> weight;
  std::vector<double> own_gain;
  std::vector<double> cross;
};

struct Interferer {
  double dx;  // own centre minus interferer centre
  double dy;
  double dist;
  double rho;
};

inline double wrap_angle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0.0 ? a + two_pi : a;
}

inline int panel_nodes(int total, double len, double whole) {
  return std::max(kMinPanelNodes, static_cast<int>(std::lround(total * len / whole)));
}

inline CoverageNodes build_coverage_nodes(const Scenario& sc, PlayerId i, int radial, int angular) {
  CoverageNodes out;
  const auto& own = sc.sbs[i];
  const double rho = coverage_radius(own);
  if (rho <= 0.0) return out;
  const double cx = own.location.x;
  const double cy = own.location.y;
  const std::size_t n = sc.size();

  std::vector<Interferer> interferers;
  std::vector<double> cuts;
  for (PlayerId j = 0; j < n; ++j) {
    if (j == i) continue;
    const double rj = coverage_radius(sc.sbs[j]);
    const double dx = cx - sc.sbs[j].location.x;
    const double dy = cy - sc.sbs[j].location.y;
    const double dist = std::hypot(dx, dy);
    if (rj <= 0.0 || dist >= rho + rj) continue;
    interferers.push_back({dx, dy, dist, rj});
    if (dist == 0.0) continue;
    const double phi = std::atan2(-dy, -dx);  // direction towards the interferer
    if (dist > rj) {
      const double alpha = std::asin(rj / dist);
      cuts.push_back(wrap_angle(phi - alpha));
      cuts.push_back(wrap_angle(phi + alpha));
    }
    if (dist > std::abs(rho - rj)) {
      const double c = std::clamp((rho * rho + dist * dist - rj * rj) / (2.0 * rho * dist), -1.0, 1.0);
      const double beta = std::acos(c);
      cuts.push_back(wrap_angle(phi - beta));
      cuts.push_back(wrap_angle(phi + beta));
    }
  }
  // Where two interferer circles cross inside the disc the order of the ray
  // breakpoints swaps; those directions are kinks as well.
  for (std::size_t a = 0; a < interferers.size(); ++a) {
    for (std::size_t b = a + 1; b < interferers.size(); ++b) {
      const auto& fa = interferers[a];
      const auto& fb = interferers[b];
      // Centres relative to own centre.
      const double ax = -fa.dx, ay = -fa.dy, bx = -fb.dx, by = -fb.dy;
      const double d = std::hypot(bx - ax, by - ay);
      if (d == 0.0 || d >= fa.rho + fb.rho || d <= std::abs(fa.rho - fb.rho)) continue;
      const double along = (fa.rho * fa.rho - fb.rho * fb.rho + d * d) / (2.0 * d);
      const double h = std::sqrt(std::max(0.0, fa.rho * fa.rho - along * along));
      const double mx = ax + along * (bx - ax) / d;
      const double my = ay + along * (by - ay) / d;
      for (double sgn : {-1.0, 1.0}) {
        const double px = mx + sgn * h * (ay - by) / d;
        const double py = my + sgn * h * (bx - ax) / d;
        if (std::hypot(px, py) < rho && (px != 0.0 || py != 0.0)) cuts.push_back(wrap_angle(std::atan2(py, px)));
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return b - a < 1e-13; }),
             cuts.end());
  if (cuts.size() >= 2 && cuts.front() + 2.0 * std::numbers::pi - cuts.back() < 1e-13) cuts.pop_back();

  // Angular nodes (theta, weight).
  std::vector<std::pair<double, double>> rays;
  const double two_pi = 2.0 * std::numbers::pi;
  if (cuts.empty()) {
    rays.reserve(angular);
    for (int k = 0; k < angular; ++k) rays.emplace_back(two_pi * k / angular, two_pi / angular);
  } else {
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double a = cuts[k];
      const double b = (k + 1 < cuts.size()) ? cuts[k + 1] : cuts.front() + two_pi;
      const double width = b - a;
      const auto& rule = gauss_legendre(panel_nodes(angular, width, two_pi));
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double u = 0.5 * (rule.nodes[q] + 1.0);
        const double wu = 0.5 * rule.weights[q];
        const double s = u * u * (3.0 - 2.0 * u);
        rays.emplace_back(a + width * s, width * 6.0 * u * (1.0 - u) * wu);
      }
    }
  }

  std::vector<double> rcuts;
  for (const auto& [theta, wtheta] : rays) {
    const double ux = std::cos(theta);
    const double uy = std::sin(theta);
    rcuts.assign({0.0, rho});
    for (const auto& f : interferers) {
      const double b = ux * f.dx + uy * f.dy;
      const double disc = b * b - (f.dist * f.dist - f.rho * f.rho);
      if (disc <= 0.0) continue;
      const double sq = std::sqrt(disc);
      for (double r : {-b - sq, -b + sq})
        if (r > 0.0 && r < rho) rcuts.push_back(r);
    }
    std::sort(rcuts.begin(), rcuts.end());
    for (std::size_t k = 0; k + 1 < rcuts.size(); ++k) {
      const double r0 = rcuts[k];
      const double len = rcuts[k + 1] - r0;
      if (len <= 0.0) continue;
      const auto& rule = gauss_legendre(panel_nodes(radial, len, rho));
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double r = r0 + 0.5 * len * (rule.nodes[q] + 1.0);
        const double x = cx + r * ux;
        const double y = cy + r * uy;
        const double w = wtheta * 0.5 * len * rule.weights[q] * r * density_at(own, x, y);
        if (w == 0.0) continue;
        out.weight.push_back(w);
        out.own_gain.push_back(channel_gain(sc, i, x, y));
        for (PlayerId j = 0; j < n; ++j) out.cross.push_back(j == i ? 0.0 : channel_gain(sc, j, x, y, i));
      }
    }
  }
  return out;
}

/// Sums in node order (theta-major, then ray panels), so results are
/// bitwise reproducible for a fixed QuadratureSpec.
inline double integrate(const CoverageNodes& nodes, double noise, PlayerId i, const PowerProfile& p) {
  if (p[i] == 0.0) return 0.0;
  const std::size_t n = p.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < nodes.weight.size(); ++k) {
    double interference = noise;
    const double* cross = &nodes.cross[k * n];
    for (std::size_t j = 0; j < n; ++j) interference += cross[j] * p[j];
    acc += nodes.weight[k] * std::log2(1.0 + nodes.own_gain[k] * p[i] / interference);
  }
  return acc;
}

}  // namespace detail

/// Evaluates coverage utilities of one scenario. Quadrature nodes are built
/// lazily per player and refinement level and shared between copies.
class UtilityEvaluator {
 public:
  explicit UtilityEvaluator(Scenario sc, QuadratureSpec quad = {})
      : cache_(std::make_shared<Cache>(std::move(sc), quad)) {
    validate(cache_->scenario);
    validate(cache_->quad);
    cache_->levels.resize(cache_->scenario.size());
  }

  const Scenario& scenario() const { return cache_->scenario; }
  const QuadratureSpec& quadrature() const { return cache_->quad; }
  std::size_t players() const { return cache_->scenario.size(); }

  /// Utility of player i; doubles the node counts until two successive
  /// estimates agree to target_rel_tol.
  double utility(PlayerId i, const PowerProfile& p) const {
    check_player(scenario(), i);
    validate_profile(scenario(), p);
    if (p[i] == 0.0) return 0.0;
    const double noise = scenario().noise_power;
    double prev = detail::integrate(nodes(i, 0), noise, i, p);
    double cur = prev;
    for (int level = 1; level <= quadrature().max_refinements; ++level) {
      cur = detail::integrate(nodes(i, level), noise, i, p);
      if (cur == prev || std::abs(cur - prev) <= quadrature().target_rel_tol * std::max(std::abs(cur), std::abs(prev)))
        return cur;
      if (level == quadrature().max_refinements) break;
      prev = cur;
    }
    throw QuadratureFailure(prev, cur);
  }

  UtilityVector utilities(const PowerProfile& p) const {
    UtilityVector u(players());
    for (PlayerId i = 0; i < players(); ++i) u[i] = utility(i, p);
    return u;
  }

 private:
  struct Cache {
    Cache(Scenario s, QuadratureSpec q) : scenario(std::move(s)), quad(q) {}
    Scenario scenario;
    QuadratureSpec quad;
    std::mutex mu;
    std::vector<std::vector<std::shared_ptr<const detail::CoverageNodes>>> levels;
  };

  const detail::CoverageNodes& nodes(PlayerId i, int level) const {
    std::lock_guard lock(cache_->mu);
    auto& per_player = cache_->levels[i];
    while (static_cast<int>(per_player.size()) <= level) {
      const int l = static_cast<int>(per_player.size());
      per_player.push_back(std::make_shared<const detail::CoverageNodes>(detail::build_coverage_nodes(
          scenario(), i, quadrature().radial_nodes << l, quadrature().angular_nodes << l)));
    }
    return *per_player[level];
  }

  std::shared_ptr<Cache> cache_;
};

inline double utility_of(const Scenario& sc, PlayerId i, const PowerProfile& p, const QuadratureSpec& quad = {}) {
  return UtilityEvaluator(sc, quad).utility(i, p);
}

inline UtilityVector utility_vector_of(const Scenario& sc, const PowerProfile& p, const QuadratureSpec& quad = {}) {
  return UtilityEvaluator(sc, quad).utilities(p);
}

}  // namespace covgame

#endif  // COVGAME_UTILITY_HPP
