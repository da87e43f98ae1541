#ifndef COVGAME_GEOMETRY_CHANNEL_HPP
#define COVGAME_GEOMETRY_CHANNEL_HPP

// Network model: small base stations above the ground plane, mobile-station
// densities on the plane, path-loss gains and the downlink SINR map.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "covgame/errors.hpp"

namespace covgame {

using PlayerId = std::size_t;
using PowerProfile = std::vector<double>;
using UtilityVector = std::vector<double>;

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Point3&, const Point3&) = default;
};

/// Uniform mobile-station density over the coverage disc; `total_mass`
/// is the integral of the density over the disc.
struct UniformDensity {
  double total_mass = 1.0;
};

/// Tabulated density, bilinearly interpolated, zero outside the table and
/// outside the coverage disc. Coordinates are relative to the ground
/// projection of the owning SBS; `values` is row-major with `nx` columns.
struct GridDensity {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double spacing = 1.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;
};

using DensitySpec = std::variant<UniformDensity, GridDensity>;

enum class GainMode {
  kPaperCompound,     // b * d^(-2 gamma) inside range
  kStandardPathloss,  // b * d^(-gamma) inside range
  kConstantOverRange  // b inside range
};

inline std::string_view to_string(GainMode m) {
  switch (m) {
    case GainMode::kPaperCompound: return "paper-compound";
    case GainMode::kStandardPathloss: return "standard-pathloss";
    case GainMode::kConstantOverRange: return "constant-over-range";
  }
  return "?";
}

inline std::optional<GainMode> gain_mode_from_string(std::string_view s) {
  if (s == "paper-compound") return GainMode::kPaperCompound;
  if (s == "standard-pathloss") return GainMode::kStandardPathloss;
  if (s == "constant-over-range") return GainMode::kConstantOverRange;
  return std::nullopt;
}

struct SbsConfig {
  Point3 location;
  double p_max = 1.0;
  double gamma = 3.0;
  double b_self = 1.0;
  /// b_cross[k]: gain constant from this SBS toward mobiles of SBS k. Empty
  /// means every cross constant equals b_self. Entry for the SBS itself is ignored.
  std::vector<double> b_cross;
  /// Range R: the SBS serves and interferes only where the 3D distance is <= R.
  double radius = 1.0;
  DensitySpec density = UniformDensity{};
};

struct Scenario {
  std::vector<SbsConfig> sbs;
  double noise_power = 1.0;
  GainMode gain_mode = GainMode::kPaperCompound;

  std::size_t size() const noexcept { return sbs.size(); }
};

/// 3D distance from the SBS to the ground point (x, y, 0).
inline double distance_to_plane(const SbsConfig& s, double x, double y) {
  const double dx = x - s.location.x;
  const double dy = y - s.location.y;
  return std::sqrt(dx * dx + dy * dy + s.location.z * s.location.z);
}

/// Radius of the ground disc where distance_to_plane <= radius.
inline double coverage_radius(const SbsConfig& s) {
  const double r2 = s.radius * s.radius - s.location.z * s.location.z;
  return r2 > 0.0 ? std::sqrt(r2) : 0.0;
}

inline double cross_constant(const Scenario& sc, PlayerId tx, PlayerId rx_cell) {
  const auto& s = sc.sbs[tx];
  if (tx == rx_cell || s.b_cross.empty()) return s.b_self;
  return s.b_cross[rx_cell];
}

inline void check_player(const Scenario& sc, PlayerId i) {
  if (i >= sc.size()) throw InvalidArgument("unknown sbs id " + std::to_string(i));
}

/// Gain of the link from `tx` to a mobile at (x, y) served by `rx_cell`.
/// Defaults to the own-link gain g_tx,tx.
inline double channel_gain(const Scenario& sc, PlayerId tx, double x, double y,
                           std::optional<PlayerId> rx_cell = std::nullopt) {
  check_player(sc, tx);
  const PlayerId cell = rx_cell.value_or(tx);
  check_player(sc, cell);
  const auto& s = sc.sbs[tx];
  const double d = distance_to_plane(s, x, y);
  if (d > s.radius) return 0.0;
  const double b = cross_constant(sc, tx, cell);
  switch (sc.gain_mode) {
    case GainMode::kPaperCompound: return b * std::pow(d, -2.0 * s.gamma);
    case GainMode::kStandardPathloss: return b * std::pow(d, -s.gamma);
    case GainMode::kConstantOverRange: return b;
  }
  return 0.0;
}

inline void validate_profile(const Scenario& sc, const PowerProfile& p) {
  if (p.size() != sc.size())
    throw InvalidArgument("power profile has " + std::to_string(p.size()) + " entries, expected " +
                          std::to_string(sc.size()));
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(p[j] >= 0.0 && p[j] <= sc.sbs[j].p_max))
      throw InvalidArgument("power of sbs " + std::to_string(j) + " outside [0, p_max]");
  }
}

/// Downlink SINR at (x, y) for mobiles of SBS i.
inline double sinr(const Scenario& sc, PlayerId i, double x, double y, const PowerProfile& p) {
  check_player(sc, i);
  validate_profile(sc, p);
  double interference = sc.noise_power;
  for (PlayerId j = 0; j < sc.size(); ++j) {
    if (j != i) interference += channel_gain(sc, j, x, y, i) * p[j];
  }
  return channel_gain(sc, i, x, y) * p[i] / interference;
}

/// Mobile-station density of cell i at the ground point (x, y).
inline double density_at(const SbsConfig& s, double x, double y) {
  if (distance_to_plane(s, x, y) > s.radius) return 0.0;
  if (const auto* u = std::get_if<UniformDensity>(&s.density)) {
    const double rho = coverage_radius(s);
    return u->total_mass / (std::numbers::pi * rho * rho);
  }
  const auto& g = std::get<GridDensity>(s.density);
  const double gx = (x - s.location.x - g.origin_x) / g.spacing;
  const double gy = (y - s.location.y - g.origin_y) / g.spacing;
  if (g.nx < 2 || g.ny < 2) return 0.0;
  if (gx < 0.0 || gy < 0.0 || gx > double(g.nx - 1) || gy > double(g.ny - 1)) return 0.0;
  const std::size_t ix = std::min<std::size_t>(static_cast<std::size_t>(gx), g.nx - 2);
  const std::size_t iy = std::min<std::size_t>(static_cast<std::size_t>(gy), g.ny - 2);
  const double fx = gx - double(ix);
  const double fy = gy - double(iy);
  const auto at = [&](std::size_t cx, std::size_t cy) { return g.values[cy * g.nx + cx]; };
  return (1 - fx) * (1 - fy) * at(ix, iy) + fx * (1 - fy) * at(ix + 1, iy) + (1 - fx) * fy * at(ix, iy + 1) +
         fx * fy * at(ix + 1, iy + 1);
}

/// Throws InvalidArgument describing the first violated scenario invariant.
inline void validate(const Scenario& sc) {
  if (sc.sbs.empty()) throw InvalidArgument("scenario needs at least one sbs");
  if (!(sc.noise_power > 0.0)) throw InvalidArgument("noise power must be > 0");
  const std::size_t n = sc.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = sc.sbs[i];
    const std::string tag = "sbs " + std::to_string(i + 1) + ": ";
    if (s.location.z == 0.0) throw InvalidArgument(tag + "height (third coordinate) must be nonzero");
    if (!(s.p_max > 0.0)) throw InvalidArgument(tag + "p_max must be > 0");
    if (!(s.gamma > 2.0)) throw InvalidArgument(tag + "gamma must be > 2");
    if (!(s.b_self > 0.0)) throw InvalidArgument(tag + "b must be > 0");
    if (!(s.radius > std::abs(s.location.z)))
      throw InvalidArgument(tag + "radius must exceed the antenna height");
    if (!s.b_cross.empty()) {
      if (s.b_cross.size() != n) throw InvalidArgument(tag + "b_cross needs one entry per sbs");
      for (double b : s.b_cross)
        if (!(b > 0.0)) throw InvalidArgument(tag + "b_cross entries must be > 0");
    }
    if (const auto* u = std::get_if<UniformDensity>(&s.density)) {
      if (!(u->total_mass >= 0.0)) throw InvalidArgument(tag + "density mass must be >= 0");
    } else {
      const auto& g = std::get<GridDensity>(s.density);
      if (g.nx < 2 || g.ny < 2 || g.values.size() != g.nx * g.ny || !(g.spacing > 0.0))
        throw InvalidArgument(tag + "malformed density grid");
      for (double v : g.values)
        if (!(v >= 0.0)) throw InvalidArgument(tag + "density must be nonnegative");
    }
    for (std::size_t j = 0; j < i; ++j)
      if (sc.sbs[j].location == s.location)
        throw InvalidArgument(tag + "location coincides with sbs " + std::to_string(j + 1));
  }
}

}  // namespace covgame

#endif  // COVGAME_GEOMETRY_CHANNEL_HPP
