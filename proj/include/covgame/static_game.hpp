#ifndef COVGAME_STATIC_GAME_HPP
#define COVGAME_STATIC_GAME_HPP

// One-shot coverage game: dominance check, Nash equilibrium, ideal point,
// sampled utility region, Kalai-Smorodinsky point and the time-sharing
// schedule realising it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "covgame/convex_hull.hpp"
#include "covgame/errors.hpp"
#include "covgame/geometry_channel.hpp"
#include "covgame/linear_feasibility.hpp"
#include "covgame/utility.hpp"

namespace covgame {

inline constexpr int kDefaultGridLevels = 21;
inline constexpr std::size_t kDefaultRegionPlayerCap = 4;
inline constexpr double kIndifferenceBand = 1e-9;

/// `levels` evenly spaced powers in [0, p_max], endpoints included exactly.
inline std::vector<double> power_levels(double p_max, int levels) {
  std::vector<double> out(levels);
  for (int k = 0; k < levels; ++k) out[k] = p_max * k / (levels - 1);
  out.back() = p_max;
  return out;
}

namespace detail {

/// Visits every profile of the tensor grid in lexicographic order (player 0
/// varies slowest).
inline void for_each_grid_profile(const std::vector<std::vector<double>>& axes,
                                  const std::function<void(const PowerProfile&)>& visit) {
  const std::size_t n = axes.size();
  std::vector<std::size_t> idx(n, 0);
  PowerProfile p(n);
  for (;;) {
    for (std::size_t j = 0; j < n; ++j) p[j] = axes[j][idx[j]];
    visit(p);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
      if (j == 0) return;
    }
    if (n == 0) return;
  }
}

inline std::size_t grid_size(std::size_t players, int levels) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < players; ++k) total *= static_cast<std::size_t>(levels);
  return total;
}

}  // namespace detail

struct DominanceViolation {
  PlayerId player;
  PowerProfile profile;  // profile at which a lower own power did better
  double value;
  double value_at_max;
};

struct DominanceReport {
  std::size_t checks = 0;
  std::size_t ties = 0;
  std::vector<DominanceViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Checks on the sampled grid that each player's utility is maximised at its
/// own maximum power, whatever the opponents play. Lower powers within the
/// indifference band count as ties.
inline DominanceReport verify_dominance(const UtilityEvaluator& ev, int grid_levels,
                                        std::size_t player_cap = kDefaultRegionPlayerCap) {
  if (grid_levels < 3) throw InvalidArgument("verify_dominance needs grid_levels >= 3");
  const Scenario& sc = ev.scenario();
  const std::size_t n = sc.size();
  if (n > player_cap) throw CapExceeded("dominance grid limited to " + std::to_string(player_cap) + " players");
  std::vector<std::vector<double>> axes(n);
  for (PlayerId j = 0; j < n; ++j) axes[j] = power_levels(sc.sbs[j].p_max, grid_levels);

  DominanceReport report;
  for (PlayerId i = 0; i < n; ++i) {
    auto opponents = axes;
    opponents[i] = {sc.sbs[i].p_max};
    detail::for_each_grid_profile(opponents, [&](const PowerProfile& base) {
      PowerProfile p = base;
      const double best = ev.utility(i, p);
      const double band = kIndifferenceBand * std::max(1.0, std::abs(best));
      for (int k = 0; k + 1 < grid_levels; ++k) {
        p[i] = axes[i][k];
        const double v = ev.utility(i, p);
        ++report.checks;
        if (v > best + band) {
          report.violations.push_back({i, p, v, best});
        } else if (std::abs(v - best) <= band) {
          ++report.ties;
        }
      }
    });
  }
  return report;
}

/// The one-shot equilibrium: every SBS at maximum power.
inline PowerProfile nash_equilibrium(const Scenario& sc) {
  PowerProfile p(sc.size());
  for (PlayerId i = 0; i < sc.size(); ++i) p[i] = sc.sbs[i].p_max;
  return p;
}

/// Profile where player i transmits at maximum power and everyone else is silent.
inline PowerProfile solo_profile(const Scenario& sc, PlayerId i) {
  PowerProfile p(sc.size(), 0.0);
  p[i] = sc.sbs[i].p_max;
  return p;
}

/// Per-player maximum utility. The closed-form candidate (own power at
/// maximum, all others silent) is cross-checked against a coarse grid.
inline UtilityVector ideal_point(const UtilityEvaluator& ev, int check_levels = 5) {
  const Scenario& sc = ev.scenario();
  const std::size_t n = sc.size();
  UtilityVector ideal(n);
  for (PlayerId i = 0; i < n; ++i) ideal[i] = ev.utility(i, solo_profile(sc, i));
  if (check_levels >= 2) {
    while (check_levels > 2 && detail::grid_size(n, check_levels) > 4096) --check_levels;
    std::vector<std::vector<double>> axes(n);
    for (PlayerId j = 0; j < n; ++j) axes[j] = power_levels(sc.sbs[j].p_max, check_levels);
    const double tol = ev.quadrature().target_rel_tol;
    detail::for_each_grid_profile(axes, [&](const PowerProfile& p) {
      for (PlayerId i = 0; i < n; ++i) {
        const double v = ev.utility(i, p);
        if (v > ideal[i] + tol * std::abs(ideal[i]) + 1e-12)
          throw NumericalError("ideal point check: player " + std::to_string(i + 1) +
                               " exceeds its solo utility on the grid");
      }
    });
  }
  return ideal;
}

struct RegionPoint {
  PowerProfile powers;
  UtilityVector utilities;
};

struct RegionSample {
  std::vector<RegionPoint> points;  // lexicographic grid order, player 0 slowest
  int grid_levels = 0;

  std::vector<UtilityVector> utilities() const {
    std::vector<UtilityVector> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.utilities);
    return out;
  }
};

/// Utility vectors on the full tensor grid of powers (endpoints included).
inline RegionSample sample_region(const UtilityEvaluator& ev, int grid_levels,
                                  std::size_t player_cap = kDefaultRegionPlayerCap) {
  if (grid_levels < 2) throw InvalidArgument("sample_region needs grid_levels >= 2");
  const Scenario& sc = ev.scenario();
  if (sc.size() > player_cap)
    throw CapExceeded("region sampling limited to " + std::to_string(player_cap) + " players (" +
                      std::to_string(grid_levels) + "^S profiles)");
  std::vector<std::vector<double>> axes(sc.size());
  for (PlayerId j = 0; j < sc.size(); ++j) axes[j] = power_levels(sc.sbs[j].p_max, grid_levels);
  RegionSample region;
  region.grid_levels = grid_levels;
  region.points.reserve(detail::grid_size(sc.size(), grid_levels));
  detail::for_each_grid_profile(axes, [&](const PowerProfile& p) { region.points.push_back({p, ev.utilities(p)}); });
  return region;
}

inline std::vector<Vec2> as_planar(std::span<const UtilityVector> us) {
  std::vector<Vec2> out;
  out.reserve(us.size());
  for (const auto& u : us) {
    if (u.size() != 2) throw InvalidArgument("planar hull requires two players");
    out.push_back({u[0], u[1]});
  }
  return out;
}

inline Hull2 convex_hull(std::span<const UtilityVector> us, double rel_tol = 1e-9) {
  const auto pts = as_planar(us);
  return convex_hull(std::span<const Vec2>(pts), rel_tol);
}

struct KsPoint {
  UtilityVector utilities;
  double t = 0.0;  // position on the segment from disagreement to ideal
};

/// Furthest point of the segment disagreement -> ideal accepted by `inside`,
/// found by bisection on the segment parameter.
template <class Membership>
KsPoint ks_point_by(Membership&& inside, const UtilityVector& disagreement, const UtilityVector& ideal,
                    double t_tol = 1e-10) {
  if (disagreement.size() != ideal.size()) throw InvalidArgument("ks_point: dimension mismatch");
  if (disagreement == ideal) throw InvalidArgument("ks_point: ideal equals disagreement point");
  const auto at = [&](double t) {
    UtilityVector u(ideal.size());
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = disagreement[k] + t * (ideal[k] - disagreement[k]);
    return u;
  };
  if (!inside(disagreement)) throw InvalidArgument("ks_point: disagreement point outside the region");
  if (inside(ideal)) return {ideal, 1.0};
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > t_tol) {
    const double mid = 0.5 * (lo + hi);
    (inside(at(mid)) ? lo : hi) = mid;
  }
  return {at(lo), lo};
}

/// Two players: exact exit point of the segment through the hull edges
/// (bisection only for a degenerate hull).
inline KsPoint ks_point(const Hull2& hull, const UtilityVector& disagreement, const UtilityVector& ideal) {
  if (disagreement.size() != 2 || ideal.size() != 2) throw InvalidArgument("planar ks_point requires two players");
  const auto inside = [&](const UtilityVector& u) { return hull.contains({u[0], u[1]}); };
  if (hull.degenerate || hull.vertices.size() < 3) return ks_point_by(inside, disagreement, ideal);
  if (disagreement == ideal) throw InvalidArgument("ks_point: ideal equals disagreement point");
  if (!inside(disagreement)) throw InvalidArgument("ks_point: disagreement point outside the region");
  const Vec2 d{disagreement[0], disagreement[1]};
  const Vec2 dir{ideal[0] - d.x, ideal[1] - d.y};
  double t = 1.0;
  const std::size_t n = hull.vertices.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2& a = hull.vertices[k];
    const Vec2& b = hull.vertices[(k + 1) % n];
    // cross(a, b, d + t dir) = c0 + t c1, nonnegative inside
    const double c0 = cross(a, b, d);
    const double c1 = (b.x - a.x) * dir.y - (b.y - a.y) * dir.x;
    if (c1 < 0.0) t = std::min(t, std::max(0.0, c0) / -c1);
  }
  if (t >= 1.0) return {ideal, 1.0};
  return {{d.x + t * dir.x, d.y + t * dir.y}, t};
}

/// Membership in the convex hull of sampled utilities of any dimension.
inline bool in_convex_hull(std::span<const UtilityVector> points, const UtilityVector& u, double tol = 1e-9) {
  return convex_combination(points, u, tol).has_value();
}

struct ScheduleAtom {
  PowerProfile powers;
  UtilityVector utilities;
  double weight;
};

struct TimeSharingSchedule {
  std::vector<ScheduleAtom> atoms;

  UtilityVector average() const {
    if (atoms.empty()) return {};
    UtilityVector u(atoms.front().utilities.size(), 0.0);
    for (const auto& a : atoms)
      for (std::size_t k = 0; k < u.size(); ++k) u[k] += a.weight * a.utilities[k];
    return u;
  }
};

/// Convex combination of at most S+1 sampled profiles whose average utility
/// equals `target`. A sampled profile matching the target is returned alone.
inline TimeSharingSchedule time_sharing_for(const RegionSample& region, const UtilityVector& target,
                                            double tol = 1e-6) {
  if (region.points.empty()) throw InvalidArgument("time_sharing_for: empty region");
  double scale = 1.0;
  for (const auto& p : region.points)
    for (double v : p.utilities) scale = std::max(scale, std::abs(v));
  const double abs_tol = tol * scale;

  for (const auto& p : region.points) {
    double worst = 0.0;
    for (std::size_t k = 0; k < target.size(); ++k) worst = std::max(worst, std::abs(p.utilities[k] - target[k]));
    if (worst <= abs_tol) return {{{p.powers, p.utilities, 1.0}}};
  }

  const auto us = region.utilities();
  TimeSharingSchedule out;
  if (target.size() == 2 && us.size() >= 3) {
    const Hull2 hull = convex_hull(std::span<const UtilityVector>(us));
    const std::size_t m = hull.vertices.size();
    for (std::size_t k = 0; k < m && m >= 2; ++k) {
      const Vec2 a = hull.vertices[k];
      const Vec2 b = hull.vertices[(k + 1) % m];
      const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
      if (len2 == 0.0) continue;
      const double s = ((target[0] - a.x) * (b.x - a.x) + (target[1] - a.y) * (b.y - a.y)) / len2;
      if (s <= 0.0 || s >= 1.0) continue;
      const double px = a.x + s * (b.x - a.x) - target[0];
      const double py = a.y + s * (b.y - a.y) - target[1];
      if (std::hypot(px, py) > abs_tol) continue;
      const auto& pa = region.points[hull.source[k]];
      const auto& pb = region.points[hull.source[(k + 1) % m]];
      out.atoms = {{pa.powers, pa.utilities, 1.0 - s}, {pb.powers, pb.utilities, s}};
      break;
    }
  }
  if (out.atoms.empty()) {
    const auto weights = convex_combination(std::span<const UtilityVector>(us), target, 1e-9);
    if (!weights) throw Infeasible("time-sharing target lies outside the sampled region");
    for (const auto& w : *weights)
      out.atoms.push_back({region.points[w.index].powers, region.points[w.index].utilities, w.weight});
  }
  const auto avg = out.average();
  for (std::size_t k = 0; k < target.size(); ++k)
    if (std::abs(avg[k] - target[k]) > abs_tol) throw Infeasible("time-sharing residual above tolerance");
  return out;
}

struct BargainingOutcome {
  UtilityVector disagreement;  // u at the Nash equilibrium
  UtilityVector ideal;
  UtilityVector ks_utilities;
  double ks_t = 0.0;
  TimeSharingSchedule schedule;
};

/// KS bargaining on the sampled region, with the Nash equilibrium as the
/// disagreement point. Exact planar hull for two players, LP membership above.
inline BargainingOutcome bargain(const UtilityEvaluator& ev, const RegionSample& region, int ideal_check_levels = 5) {
  const Scenario& sc = ev.scenario();
  const std::size_t n = sc.size();
  BargainingOutcome out;
  const PowerProfile ne = nash_equilibrium(sc);
  const auto corner = std::find_if(region.points.begin(), region.points.end(),
                                   [&](const RegionPoint& p) { return p.powers == ne; });
  out.disagreement = corner != region.points.end() ? corner->utilities : ev.utilities(ne);
  out.ideal = ideal_point(ev, ideal_check_levels);

  double scale = 0.0;
  for (PlayerId i = 0; i < n; ++i) scale = std::max(scale, std::abs(out.ideal[i]));
  bool degenerate = true;
  for (PlayerId i = 0; i < n; ++i)
    if (out.ideal[i] - out.disagreement[i] > ev.quadrature().target_rel_tol * std::max(scale, 1e-300))
      degenerate = false;

  if (degenerate) {
    out.ks_utilities = out.disagreement;
    out.ks_t = 0.0;
    out.schedule.atoms = {{ne, out.disagreement, 1.0}};
    return out;
  }
  const auto us = region.utilities();
  KsPoint ks;
  if (n == 2) {
    const Hull2 hull = convex_hull(std::span<const UtilityVector>(us));
    ks = ks_point(hull, out.disagreement, out.ideal);
  } else {
    ks = ks_point_by([&](const UtilityVector& u) { return in_convex_hull(us, u); }, out.disagreement, out.ideal);
  }
  out.ks_utilities = ks.utilities;
  out.ks_t = ks.t;
  out.schedule = time_sharing_for(region, out.ks_utilities);
  return out;
}

}  // namespace covgame

#endif  // COVGAME_STATIC_GAME_HPP
