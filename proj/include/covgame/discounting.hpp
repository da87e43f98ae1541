#ifndef COVGAME_DISCOUNTING_HPP
#define COVGAME_DISCOUNTING_HPP

// Discounted payoffs, subset coding for announcements, the identification
// budget and the discount threshold below which cooperation is sustained.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covgame/errors.hpp"
#include "covgame/geometry_channel.hpp"

namespace covgame {

using Stage = std::int64_t;  // 1-based stage index

inline void check_discount(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidArgument("discount lambda must lie in (0, 1)");
}

/// sum_t lambda (1 - lambda)^(t-1) u(t), t = 1..size.
inline double discounted_payoff(std::span<const double> stage_utilities, double lambda) {
  check_discount(lambda);
  double acc = 0.0;
  double w = lambda;
  for (double u : stage_utilities) {
    acc += w * u;
    w *= 1.0 - lambda;
  }
  return acc;
}

/// Total weight of the first T stages: 1 - (1 - lambda)^T.
inline double discount_mass(double lambda, Stage T) { return 1.0 - std::pow(1.0 - lambda, static_cast<double>(T)); }

/// Bit k set iff player k is in the subset. Players are 0-based here.
inline std::vector<bool> encode_subset(const std::vector<PlayerId>& subset, std::size_t players) {
  std::vector<bool> bits(players, false);
  for (PlayerId k : subset) {
    if (k >= players) throw InvalidArgument("encode_subset: player " + std::to_string(k + 1) + " out of range");
    bits[k] = true;
  }
  return bits;
}

inline std::vector<PlayerId> decode_subset(const std::vector<bool>& bits) {
  std::vector<PlayerId> out;
  for (std::size_t k = 0; k < bits.size(); ++k)
    if (bits[k]) out.push_back(k);
  return out;
}

/// Block length l: one announcement bit per player.
inline std::size_t block_length(std::size_t players) { return players; }

/// n_bar = l * max(1, 2l - 5) with l = S.
inline std::size_t identification_budget(std::size_t players) {
  if (players < 2) throw InvalidArgument("identification_budget needs at least two players");
  const auto l = static_cast<std::int64_t>(block_length(players));
  return static_cast<std::size_t>(l * std::max<std::int64_t>(1, 2 * l - 5));
}

/// lambda_i* = 1 - ((ideal - ks) / (ideal - ne))^(1/n_bar).
inline double theorem1_threshold(double ideal, double ks, double ne, std::size_t n_bar) {
  if (n_bar < 1) throw InvalidArgument("theorem1_threshold: n_bar must be >= 1");
  if (ideal == ne) throw DegeneratePlayer("ideal utility equals the equilibrium utility");
  if (!(ideal > ne)) throw InvalidArgument("theorem1_threshold: ideal below equilibrium utility");
  const double slack = 1e-12 * std::max({std::abs(ideal), std::abs(ne), 1e-300});
  if (ks < ne - slack || ks > ideal + slack) throw InvalidArgument("theorem1_threshold: ks outside [ne, ideal]");
  if (ks >= ideal) return 1.0;
  if (ks <= ne) return 0.0;
  return 1.0 - std::pow((ideal - ks) / (ideal - ne), 1.0 / static_cast<double>(n_bar));
}

/// Deviation gain bound against the punishment: an idealised deviator earns
/// `ideal` for n_bar stages and `ne` afterwards. Positive means deviating pays.
inline double theorem1_comparator(double lambda, double ideal, double ks, double ne, std::size_t n_bar) {
  check_discount(lambda);
  const double tail = std::pow(1.0 - lambda, static_cast<double>(n_bar));
  return (1.0 - tail) * (ideal - ks) - tail * (ks - ne);
}

/// Same comparison with the deviation starting at `start` and the weights
/// summed stage by stage (no closed form for the first n_bar stages).
inline double theorem1_comparator_from(double lambda, double ideal, double ks, double ne, std::size_t n_bar,
                                       Stage start) {
  check_discount(lambda);
  if (start < 1) throw InvalidArgument("start stage must be >= 1");
  double w = lambda * std::pow(1.0 - lambda, static_cast<double>(start - 1));
  double gain = 0.0;
  for (std::size_t k = 0; k < n_bar; ++k) {
    gain += w * (ideal - ks);
    w *= 1.0 - lambda;
  }
  // Remaining weight sum_{t >= start + n_bar} lambda (1 - lambda)^(t-1) = w / lambda.
  return gain - (w / lambda) * (ks - ne);
}

struct ThresholdReport {
  std::vector<std::optional<double>> per_player;  // nullopt for degenerate players
  std::vector<PlayerId> degenerate;
  std::optional<double> lambda_star;  // min over non-degenerate players
};

inline ThresholdReport scenario_threshold(const UtilityVector& ideal, const UtilityVector& ks, const UtilityVector& ne,
                                          std::size_t n_bar, double degenerate_tol = 0.0) {
  if (ideal.size() != ks.size() || ks.size() != ne.size()) throw InvalidArgument("threshold: dimension mismatch");
  ThresholdReport r;
  for (PlayerId i = 0; i < ideal.size(); ++i) {
    if (std::abs(ideal[i] - ne[i]) <= degenerate_tol * std::max(1.0, std::abs(ideal[i])) || ideal[i] == ne[i]) {
      r.per_player.emplace_back();
      r.degenerate.push_back(i);
      continue;
    }
    const double ks_i = std::min(std::max(ks[i], ne[i]), ideal[i]);
    const double v = theorem1_threshold(ideal[i], ks_i, ne[i], n_bar);
    r.per_player.emplace_back(v);
    if (!r.lambda_star || v < *r.lambda_star) r.lambda_star = v;
  }
  return r;
}

/// Stages needed so that (1 - lambda)^T * scale < tol.
inline Stage horizon_for(double lambda, double scale, double tol) {
  check_discount(lambda);
  if (!(tol > 0.0)) throw InvalidArgument("horizon tolerance must be > 0");
  if (scale <= tol) return 1;
  const double t = std::ceil(std::log(tol / scale) / std::log(1.0 - lambda));
  Stage T = std::max<Stage>(1, static_cast<Stage>(t));
  while (std::pow(1.0 - lambda, static_cast<double>(T)) * scale >= tol) ++T;
  return T;
}

}  // namespace covgame

#endif  // COVGAME_DISCOUNTING_HPP
