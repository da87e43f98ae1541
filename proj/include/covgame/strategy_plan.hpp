#ifndef COVGAME_STRATEGY_PLAN_HPP
#define COVGAME_STRATEGY_PLAN_HPP

// Cooperative plan of the repeated game: the KS time-sharing schedule laid
// out as a fixed cycle of pure profiles, plus the announcement alphabet used
// while hunting a deviator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "covgame/discounting.hpp"
#include "covgame/errors.hpp"
#include "covgame/geometry_channel.hpp"
#include "covgame/static_game.hpp"

namespace covgame {

inline constexpr std::size_t kDefaultCycleLength = 100;
inline constexpr double kDetectionRelTol = 1e-6;

struct StrategyPlan {
  TimeSharingSchedule schedule;
  std::vector<std::size_t> cycle;  // atom index played at stage t: cycle[(t-1) % size]
  std::vector<std::size_t> counts;  // occurrences of each atom in one cycle
  std::vector<double> p_max;
  std::vector<double> announcement_low;   // bit 0
  std::vector<double> announcement_high;  // bit 1
  std::vector<double> epsilon;            // detection tolerance per player
  std::size_t block_length = 0;
  std::size_t identification_budget = 0;
  UtilityVector ks;     // target cooperative utilities
  UtilityVector ne;     // punishment level
  UtilityVector ideal;

  std::size_t players() const { return p_max.size(); }

  const ScheduleAtom& atom_at(Stage t) const { return schedule.atoms[cycle[static_cast<std::size_t>(t - 1) % cycle.size()]]; }

  double cooperative_power(PlayerId i, Stage t) const { return atom_at(t).powers[i]; }

  bool on_plan(PlayerId i, Stage t, double power) const {
    return std::abs(power - cooperative_power(i, t)) <= epsilon[i];
  }

  /// Decoded announcement bit, or -1 when the power is off the alphabet.
  int decode_bit(PlayerId i, double power) const {
    if (std::abs(power - announcement_low[i]) <= epsilon[i]) return 0;
    if (std::abs(power - announcement_high[i]) <= epsilon[i]) return 1;
    return -1;
  }

  double announce(PlayerId i, bool bit) const { return bit ? announcement_high[i] : announcement_low[i]; }

  /// Average utility realised by one period of the cycle.
  UtilityVector realized_average() const {
    UtilityVector u(players(), 0.0);
    for (std::size_t a = 0; a < schedule.atoms.size(); ++a)
      for (PlayerId i = 0; i < players(); ++i)
        u[i] += static_cast<double>(counts[a]) * schedule.atoms[a].utilities[i];
    for (double& v : u) v /= static_cast<double>(cycle.size());
    return u;
  }
};

namespace detail {

/// Largest-remainder apportionment of `total` slots; ties go to the lower index.
inline std::vector<std::size_t> apportion(const std::vector<double>& weights, std::size_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) throw InvalidArgument("schedule weights must have positive sum");
  std::vector<std::size_t> counts(weights.size());
  std::vector<double> rem(weights.size());
  std::size_t used = 0;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    const double exact = weights[a] / sum * static_cast<double>(total);
    counts[a] = static_cast<std::size_t>(std::floor(exact));
    rem[a] = exact - static_cast<double>(counts[a]);
    used += counts[a];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t k = 0; used < total; ++k, ++used) ++counts[order[k % order.size()]];
  return counts;
}

/// Spreads the atoms over the cycle: each step plays the atom furthest
/// behind its target share.
inline std::vector<std::size_t> interleave(const std::vector<std::size_t>& counts) {
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  std::vector<std::size_t> used(counts.size(), 0);
  std::vector<std::size_t> out;
  out.reserve(total);
  for (std::size_t step = 1; step <= total; ++step) {
    std::size_t best = counts.size();
    double best_lag = 0.0;
    for (std::size_t a = 0; a < counts.size(); ++a) {
      if (used[a] == counts[a]) continue;
      const double lag = static_cast<double>(counts[a]) * static_cast<double>(step) / static_cast<double>(total) -
                         static_cast<double>(used[a]);
      if (best == counts.size() || lag > best_lag) {
        best = a;
        best_lag = lag;
      }
    }
    ++used[best];
    out.push_back(best);
  }
  return out;
}

/// First two levels of 0, p, p/2, p/4, 3p/4, p/8, 3p/8, ... that keep more
/// than 2 eps away from every power the plan uses.
inline std::pair<double, double> pick_alphabet(double p_max, double eps, const std::vector<double>& plan_powers) {
  std::vector<double> candidates{0.0, p_max};
  for (int denom = 2; denom <= (1 << 20) && candidates.size() < 4096; denom *= 2)
    for (int num = 1; num < denom; num += 2) candidates.push_back(p_max * num / denom);
  std::vector<double> picked;
  for (double c : candidates) {
    const bool clear = std::all_of(plan_powers.begin(), plan_powers.end(),
                                   [&](double q) { return std::abs(c - q) > 2.0 * eps; });
    if (clear) picked.push_back(c);
    if (picked.size() == 2) return {picked[0], picked[1]};
  }
  throw NumericalError("no announcement levels clear of the cooperative powers");
}

}  // namespace detail

/// Builds the plan from a time-sharing schedule. `ks`, `ne` and `ideal` are
/// carried along for thresholds and horizons; empty `ks` uses the schedule
/// average.
inline StrategyPlan make_plan(const std::vector<double>& p_max, const TimeSharingSchedule& schedule,
                              UtilityVector ks = {}, UtilityVector ne = {}, UtilityVector ideal = {},
                              std::size_t cycle_length = kDefaultCycleLength) {
  const std::size_t n = p_max.size();
  if (n == 0) throw InvalidArgument("plan needs at least one player");
  if (schedule.atoms.empty()) throw InvalidArgument("plan needs a nonempty schedule");
  if (cycle_length < 1) throw InvalidArgument("cycle length must be >= 1");
  for (const auto& a : schedule.atoms) {
    if (a.powers.size() != n || a.utilities.size() != n)
      throw InvalidArgument("schedule atom has the wrong number of players");
    if (!(a.weight >= 0.0)) throw InvalidArgument("schedule weights must be nonnegative");
    for (PlayerId i = 0; i < n; ++i)
      if (!(a.powers[i] >= 0.0 && a.powers[i] <= p_max[i])) throw InvalidArgument("schedule power outside [0, p_max]");
  }

  StrategyPlan plan;
  plan.p_max = p_max;
  std::vector<double> weights;
  for (const auto& a : schedule.atoms) weights.push_back(a.weight);
  const auto counts = detail::apportion(weights, cycle_length);
  for (std::size_t a = 0; a < schedule.atoms.size(); ++a) {
    if (counts[a] == 0) continue;
    plan.schedule.atoms.push_back(schedule.atoms[a]);
    plan.counts.push_back(counts[a]);
  }
  plan.cycle = detail::interleave(plan.counts);

  for (PlayerId i = 0; i < n; ++i) {
    const double eps = kDetectionRelTol * p_max[i];
    std::vector<double> used;
    for (const auto& a : plan.schedule.atoms) used.push_back(a.powers[i]);
    const auto [low, high] = detail::pick_alphabet(p_max[i], eps, used);
    plan.epsilon.push_back(eps);
    plan.announcement_low.push_back(low);
    plan.announcement_high.push_back(high);
  }
  plan.block_length = block_length(n);
  plan.identification_budget = n >= 2 ? identification_budget(n) : 0;
  plan.ks = ks.empty() ? schedule.average() : std::move(ks);
  plan.ne = std::move(ne);
  plan.ideal = std::move(ideal);
  return plan;
}

inline StrategyPlan make_plan(const Scenario& sc, const BargainingOutcome& outcome,
                              std::size_t cycle_length = kDefaultCycleLength) {
  std::vector<double> p_max;
  for (const auto& s : sc.sbs) p_max.push_back(s.p_max);
  return make_plan(p_max, outcome.schedule, outcome.ks_utilities, outcome.disagreement, outcome.ideal, cycle_length);
}

/// Bound on |discounted cooperative payoff - ks * (1 - (1-lambda)^T)| for each
/// player: lambda * max partial discrepancy over one period (Abel summation)
/// plus the rounding gap between the realised average and ks.
inline UtilityVector cycling_error(const StrategyPlan& plan, double lambda) {
  check_discount(lambda);
  const auto avg = plan.realized_average();
  UtilityVector out(plan.players(), 0.0);
  for (PlayerId i = 0; i < plan.players(); ++i) {
    double partial = 0.0;
    double worst = 0.0;
    for (std::size_t idx : plan.cycle) {
      partial += plan.schedule.atoms[idx].utilities[i] - avg[i];
      worst = std::max(worst, std::abs(partial));
    }
    const double target = i < plan.ks.size() ? plan.ks[i] : avg[i];
    out[i] = lambda * worst + std::abs(avg[i] - target);
  }
  return out;
}

/// First stage where player i's plan power is below p_max - eps, i.e. the
/// first stage where transmitting at full power is a visible deviation.
inline Stage first_deviation_opportunity(const StrategyPlan& plan, PlayerId i) {
  for (std::size_t k = 0; k < plan.cycle.size(); ++k) {
    const Stage t = static_cast<Stage>(k) + 1;
    if (plan.cooperative_power(i, t) < plan.p_max[i] - plan.epsilon[i]) return t;
  }
  return 1;
}

}  // namespace covgame

#endif  // COVGAME_STRATEGY_PLAN_HPP
