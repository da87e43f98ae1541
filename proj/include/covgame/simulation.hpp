#ifndef COVGAME_SIMULATION_HPP
#define COVGAME_SIMULATION_HPP

// Discounted repeated game: runs the monitoring protocol long enough for the
// truncation tail to drop below tolerance, prices each stage with the
// coverage utilities, and checks the plan against a library of deviations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covgame/discounting.hpp"
#include "covgame/identification.hpp"
#include "covgame/obs_graph.hpp"
#include "covgame/strategy_plan.hpp"
#include "covgame/utility.hpp"

namespace covgame {

inline constexpr double kDefaultHorizonRelTol = 1e-9;

struct StageRecord {
  Stage stage = 0;
  std::vector<PhaseTag> phases;
  PowerProfile powers;
  UtilityVector utilities;
};

struct SimulationTrace {
  std::vector<StageRecord> stages;
  double discount = 0.0;
  Stage horizon = 0;
  double horizon_tol = 0.0;
  double tail_bound = 0.0;  // (1 - lambda)^T * max ideal utility
  UtilityVector discounted_payoffs;
  ProtocolResult protocol;
};

/// Memoised stage utilities; simulations revisit a handful of profiles.
class ProfileUtilityCache {
 public:
  explicit ProfileUtilityCache(const UtilityEvaluator& ev) : ev_(&ev) {}

  const UtilityVector& operator()(const PowerProfile& p) {
    auto it = cache_.find(p);
    if (it == cache_.end()) it = cache_.emplace(p, ev_->utilities(p)).first;
    return it->second;
  }

  std::size_t size() const { return cache_.size(); }

 private:
  const UtilityEvaluator* ev_;
  std::map<PowerProfile, UtilityVector> cache_;
};

inline double utility_scale(const StrategyPlan& plan) {
  double m = 0.0;
  for (double v : plan.ideal) m = std::max(m, std::abs(v));
  if (m == 0.0)
    for (const auto& a : plan.schedule.atoms)
      for (double v : a.utilities) m = std::max(m, std::abs(v));
  return m > 0.0 ? m : 1.0;
}

/// Horizon tolerance used when none is given: 1e-9 of the largest ideal utility.
inline double default_horizon_tol(const StrategyPlan& plan) { return kDefaultHorizonRelTol * utility_scale(plan); }

inline SimulationTrace run_simulation(const UtilityEvaluator& ev, const ObservationGraph& graph,
                                      const StrategyPlan& plan, double lambda,
                                      std::span<const DeviationSpec> deviations,
                                      std::optional<double> horizon_tol = std::nullopt,
                                      const ProtocolOptions& options = {}) {
  check_discount(lambda);
  if (ev.players() != plan.players()) throw InvalidArgument("plan and scenario disagree on the number of players");
  SimulationTrace trace;
  trace.discount = lambda;
  trace.horizon_tol = horizon_tol.value_or(default_horizon_tol(plan));
  const double scale = utility_scale(plan);
  trace.horizon = horizon_for(lambda, scale, trace.horizon_tol);
  trace.tail_bound = std::pow(1.0 - lambda, static_cast<double>(trace.horizon)) * scale;
  trace.protocol = play_protocol(graph, plan, deviations, trace.horizon, options);

  ProfileUtilityCache utilities(ev);
  const std::size_t n = plan.players();
  trace.discounted_payoffs.assign(n, 0.0);
  trace.stages.reserve(static_cast<std::size_t>(trace.horizon));
  double w = lambda;
  for (Stage t = 1; t <= trace.horizon; ++t) {
    const auto idx = static_cast<std::size_t>(t - 1);
    StageRecord rec{t, trace.protocol.phases[idx], trace.protocol.actions[idx], utilities(trace.protocol.actions[idx])};
    for (PlayerId i = 0; i < n; ++i) trace.discounted_payoffs[i] += w * rec.utilities[i];
    w *= 1.0 - lambda;
    trace.stages.push_back(std::move(rec));
  }
  return trace;
}

inline SimulationTrace run_simulation(const UtilityEvaluator& ev, const ObservationGraph& graph,
                                      const StrategyPlan& plan, double lambda,
                                      const std::optional<DeviationSpec>& deviator = std::nullopt,
                                      std::optional<double> horizon_tol = std::nullopt,
                                      const ProtocolOptions& options = {}) {
  if (!deviator) return run_simulation(ev, graph, plan, lambda, std::span<const DeviationSpec>{}, horizon_tol, options);
  return run_simulation(ev, graph, plan, lambda, std::span<const DeviationSpec>(&*deviator, 1), horizon_tol, options);
}

/// Four deviations per player: full power forever, full power then protocol
/// mimicry with random subsets, random powers, and a single full-power stage.
inline std::vector<DeviationSpec> deviation_library(const StrategyPlan& plan, std::uint64_t seed = 1) {
  std::vector<DeviationSpec> out;
  for (PlayerId i = 0; i < plan.players(); ++i) {
    const Stage s0 = first_deviation_opportunity(plan, i);
    const std::uint64_t s = seed * 1000003ULL + i;
    const auto spec = [&](DeviationMode m, std::uint64_t seed_, bool open_max) {
      DeviationSpec d;
      d.player = i;
      d.start_stage = s0;
      d.mode = m;
      d.seed = seed_;
      d.open_max = open_max;
      return d;
    };
    out.push_back(spec(DeviationMode::kMaxPower, 0, false));
    out.push_back(spec(DeviationMode::kMimic, s, true));
    out.push_back(spec(DeviationMode::kRandom, s, false));
    out.push_back(spec(DeviationMode::kOneShot, 0, false));
  }
  return out;
}

struct DeviationOutcome {
  DeviationSpec spec;
  double cooperative_payoff = 0.0;
  double deviation_payoff = 0.0;
  double gain = 0.0;
  bool convicted = false;  // every innocent convicted the deviator
  Stage last_conviction = 0;
  std::optional<Stage> first_detection;
};

struct VerificationReport {
  double lambda = 0.0;
  std::optional<double> lambda_star;
  std::vector<PlayerId> degenerate;
  std::vector<DeviationOutcome> outcomes;
  UtilityVector max_gain;   // per player, over the library
  UtilityVector cooperative_payoffs;
  UtilityVector cycling_error;
  double tail_bound = 0.0;
  double slack = 0.0;       // quadrature tolerance + tail bound
  bool verified = false;
};

inline VerificationReport verify_equilibrium(const UtilityEvaluator& ev, const ObservationGraph& graph,
                                             const StrategyPlan& plan, double lambda,
                                             std::span<const DeviationSpec> library,
                                             std::optional<double> horizon_tol = std::nullopt) {
  check_discount(lambda);
  VerificationReport report;
  report.lambda = lambda;
  if (!plan.ideal.empty() && !plan.ne.empty()) {
    const auto th = scenario_threshold(plan.ideal, plan.ks, plan.ne, std::max<std::size_t>(1, plan.identification_budget));
    report.lambda_star = th.lambda_star;
    report.degenerate = th.degenerate;
  }
  const auto coop = run_simulation(ev, graph, plan, lambda, std::span<const DeviationSpec>{}, horizon_tol);
  report.cooperative_payoffs = coop.discounted_payoffs;
  report.cycling_error = cycling_error(plan, lambda);
  report.tail_bound = coop.tail_bound;
  report.slack = ev.quadrature().target_rel_tol * utility_scale(plan) + coop.tail_bound;
  report.max_gain.assign(plan.players(), -std::numeric_limits<double>::infinity());

  for (const auto& spec : library) {
    const auto trace = run_simulation(ev, graph, plan, lambda, std::span<const DeviationSpec>(&spec, 1), horizon_tol);
    DeviationOutcome o;
    o.spec = spec;
    o.cooperative_payoff = coop.discounted_payoffs[spec.player];
    o.deviation_payoff = trace.discounted_payoffs[spec.player];
    o.gain = o.deviation_payoff - o.cooperative_payoff;
    o.first_detection = trace.protocol.first_detection;
    o.convicted = true;
    for (PlayerId i = 0; i < plan.players(); ++i) {
      if (i == spec.player) continue;
      const auto& c = trace.protocol.conviction[i];
      if (!c || c->suspect != spec.player) {
        o.convicted = false;
      } else {
        o.last_conviction = std::max(o.last_conviction, trace.protocol.conviction_stage[i]);
      }
    }
    report.max_gain[spec.player] = std::max(report.max_gain[spec.player], o.gain);
    report.outcomes.push_back(std::move(o));
  }
  report.verified = std::all_of(report.outcomes.begin(), report.outcomes.end(),
                                [&](const DeviationOutcome& o) { return o.gain <= report.slack; });
  return report;
}

}  // namespace covgame

#endif  // COVGAME_SIMULATION_HPP
