// covgame: command-line front end for the coverage game.
//
//   covgame region    [--scenario F] [--out CSV] [--grid-levels N]
//   covgame simulate  [--scenario F] [--deviation F] [--out CSV] [--lambda L] [--seed S]
//   covgame verify    [--scenario F] [--out JSON] [--lambda L] [--seed S]
//   covgame threshold [--scenario F] [--out JSON]
//
// Exit codes: 0 ok / verified, 1 refuted, 2 input error, 3 resource cap,
// 4 numerical failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "covgame/covgame.hpp"

namespace {

using namespace covgame;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kRefuted = 1, kInput = 2, kCap = 3, kNumerical = 4 };

struct Options {
  std::string scenario;
  std::string deviation;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> grid_levels;
  std::optional<double> lambda;
  bool allow_unguaranteed = false;
};

ScenarioFile load_scenario(const Options& o) {
  if (o.scenario.empty()) return default_scenario();
  return parse_scenario(read_file(o.scenario), o.scenario);
}

void emit(const Options& o, const std::string& content) {
  if (o.out.empty() || o.out == "-") {
    std::cout << content;
  } else {
    write_file_atomic(o.out, content);
  }
}

struct Pipeline {
  ScenarioFile file;
  UtilityEvaluator ev;
  RegionSample region;
  BargainingOutcome outcome;
  StrategyPlan plan;
  ThresholdReport threshold;
};

Pipeline solve_static(const Options& o) {
  ScenarioFile file = load_scenario(o);
  const int levels = o.grid_levels.value_or(file.repeated.grid_levels);
  if (levels < 2) throw InvalidArgument("--grid-levels must be >= 2");
  UtilityEvaluator ev(file.scenario, file.quadrature);
  RegionSample region = sample_region(ev, levels);
  BargainingOutcome outcome = bargain(ev, region);
  StrategyPlan plan = make_plan(file.scenario, outcome, file.repeated.cycle_length);
  const std::size_t n_bar = std::max<std::size_t>(1, plan.identification_budget);
  ThresholdReport th = scenario_threshold(outcome.ideal, outcome.ks_utilities, outcome.disagreement, n_bar,
                                          file.quadrature.target_rel_tol);
  return {std::move(file), std::move(ev), std::move(region), std::move(outcome), std::move(plan), std::move(th)};
}

/// --lambda, then the file, then 0.9 of the threshold (0.5 when every player is degenerate).
double pick_lambda(const Options& o, const Pipeline& p) {
  double lambda = 0.5;
  if (o.lambda) lambda = *o.lambda;
  else if (p.file.repeated.lambda) lambda = *p.file.repeated.lambda;
  else if (p.threshold.lambda_star && *p.threshold.lambda_star > 0.0) lambda = 0.9 * *p.threshold.lambda_star;
  check_discount(lambda);
  return lambda;
}

ordered_json vec_json(const std::vector<double>& v) { return ordered_json(v); }

int cmd_region(const Options& o) {
  const Pipeline p = solve_static(o);
  RegionReport report{p.region, std::nullopt, p.outcome};
  if (p.file.scenario.size() == 2) report.hull = convex_hull(std::span<const UtilityVector>(p.region.utilities()));
  emit(o, region_csv(report, p.file.scenario.size()));
  return kOk;
}

int cmd_simulate(const Options& o) {
  const Pipeline p = solve_static(o);
  std::vector<DeviationSpec> devs;
  if (!o.deviation.empty()) devs = parse_deviations(read_file(o.deviation), p.file.scenario.size(), o.deviation);
  if (o.seed)
    for (auto& d : devs) d.seed = *o.seed;
  const double lambda = pick_lambda(o, p);
  ProtocolOptions popt;
  popt.allow_unguaranteed = o.allow_unguaranteed;
  const auto trace = run_simulation(p.ev, p.file.graph, p.plan, lambda, devs, p.file.repeated.horizon_tol, popt);
  emit(o, trace_csv(trace));

  std::ostringstream s;
  const std::size_t n = p.file.scenario.size();
  s << "# summary\n";
  s << "lambda = " << fmt(lambda) << "\n";
  s << "horizon = " << trace.horizon << "\n";
  s << "tail_bound = " << fmt(trace.tail_bound) << "\n";
  s << "identification_budget = " << p.plan.identification_budget << "\n";
  if (p.threshold.lambda_star) {
    s << "lambda_star = " << fmt(*p.threshold.lambda_star) << "\n";
    s << "lambda_below_threshold = " << (lambda < *p.threshold.lambda_star ? "true" : "false") << "\n";
  } else {
    s << "lambda_star = none (no player gains from cooperation)\n";
  }
  for (PlayerId i : p.threshold.degenerate) s << "degenerate_player = " << i + 1 << "\n";
  if (trace.protocol.first_detection) s << "first_detection = " << *trace.protocol.first_detection << "\n";
  for (PlayerId i = 0; i < n; ++i) {
    s << "player " << i + 1 << ": payoff = " << fmt(trace.discounted_payoffs[i]) << ", ks = " << fmt(p.plan.ks[i]);
    if (const auto& c = trace.protocol.conviction[i]) {
      s << ", convicts " << c->suspect + 1 << " (deviated at " << c->deviation_stage << ") at stage "
        << trace.protocol.conviction_stage[i];
    }
    s << "\n";
  }
  for (PlayerId i : trace.protocol.ambiguous) s << "ambiguous = player " << i + 1 << " never narrowed to one suspect\n";
  for (PlayerId i : trace.protocol.inconsistent) s << "inconsistent = player " << i + 1 << " rejected every hypothesis\n";
  if (!trace.protocol.note.empty()) s << "note = " << trace.protocol.note << "\n";
  if (p.threshold.lambda_star && lambda >= *p.threshold.lambda_star)
    s << "warning: lambda >= lambda_star, the equilibrium condition fails\n";
  if (o.out.empty() || o.out == "-") std::cerr << s.str();
  else std::cout << s.str();
  return kOk;
}

int cmd_verify(const Options& o) {
  const Pipeline p = solve_static(o);
  const double lambda = pick_lambda(o, p);
  const auto library = deviation_library(p.plan, o.seed.value_or(1));
  const auto rep = verify_equilibrium(p.ev, p.file.graph, p.plan, lambda, library, p.file.repeated.horizon_tol);

  ordered_json j;
  j["verified"] = rep.verified;
  j["lambda"] = lambda;
  j["lambda_star"] = rep.lambda_star ? ordered_json(*rep.lambda_star) : ordered_json(nullptr);
  std::vector<std::size_t> degenerate;
  for (PlayerId i : p.threshold.degenerate) degenerate.push_back(i + 1);
  j["degenerate_players"] = degenerate;
  if (!degenerate.empty()) j["note"] = "degenerate players gain nothing from cooperation and are excluded from lambda_star";
  j["identification_budget"] = p.plan.identification_budget;
  j["slack"] = rep.slack;
  j["tail_bound"] = rep.tail_bound;
  j["ks"] = vec_json(p.plan.ks);
  j["ne"] = vec_json(p.plan.ne);
  j["ideal"] = vec_json(p.plan.ideal);
  j["cooperative_payoffs"] = vec_json(rep.cooperative_payoffs);
  j["cycling_error"] = vec_json(rep.cycling_error);
  j["max_gain"] = vec_json(rep.max_gain);
  ordered_json outcomes = ordered_json::array();
  for (const auto& oc : rep.outcomes) {
    ordered_json e;
    e["player"] = oc.spec.player + 1;
    e["mode"] = std::string(to_string(oc.spec.mode));
    e["start_stage"] = oc.spec.start_stage;
    e["seed"] = oc.spec.seed;
    e["deviation_payoff"] = oc.deviation_payoff;
    e["cooperative_payoff"] = oc.cooperative_payoff;
    e["gain"] = oc.gain;
    e["convicted"] = oc.convicted;
    e["first_detection"] = oc.first_detection ? ordered_json(*oc.first_detection) : ordered_json(nullptr);
    e["last_conviction"] = oc.last_conviction;
    outcomes.push_back(std::move(e));
  }
  j["outcomes"] = std::move(outcomes);
  emit(o, j.dump(2) + "\n");
  return rep.verified ? kOk : kRefuted;
}

int cmd_threshold(const Options& o) {
  const Pipeline p = solve_static(o);
  ordered_json j;
  j["identification_budget"] = p.plan.identification_budget;
  j["lambda_star"] = p.threshold.lambda_star ? ordered_json(*p.threshold.lambda_star) : ordered_json(nullptr);
  ordered_json players = ordered_json::array();
  for (PlayerId i = 0; i < p.file.scenario.size(); ++i) {
    ordered_json e;
    e["player"] = i + 1;
    e["ideal"] = p.outcome.ideal[i];
    e["ks"] = p.outcome.ks_utilities[i];
    e["ne"] = p.outcome.disagreement[i];
    const auto& v = p.threshold.per_player[i];
    e["lambda_star"] = v ? ordered_json(*v) : ordered_json(nullptr);
    e["degenerate"] = !v.has_value();
    players.push_back(std::move(e));
  }
  j["players"] = std::move(players);
  emit(o, j.dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage game: utility region, KS bargaining and repeated-game equilibrium checks"};
  app.require_subcommand(1);
  Options o;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--scenario", o.scenario, "scenario file (default: built-in two-SBS example)");
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--grid-levels", o.grid_levels, "power levels per player for the region grid");
  };
  auto* region = app.add_subcommand("region", "sample the utility region and emit CSV");
  common(region);
  auto* simulate = app.add_subcommand("simulate", "simulate the repeated game and emit a trace CSV");
  common(simulate);
  simulate->add_option("--deviation", o.deviation, "deviation file");
  simulate->add_option("--lambda", o.lambda, "discount factor override");
  simulate->add_option("--seed", o.seed, "replace the seed of every deviation");
  simulate->add_flag("--allow-unguaranteed", o.allow_unguaranteed, "run on graphs without an identification guarantee");
  auto* verify = app.add_subcommand("verify", "check the plan against the deviation library");
  common(verify);
  verify->add_option("--lambda", o.lambda, "discount factor override");
  verify->add_option("--seed", o.seed, "seed of the random deviations");
  auto* threshold = app.add_subcommand("threshold", "print the discount threshold per player");
  common(threshold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*region) return cmd_region(o);
    if (*simulate) return cmd_simulate(o);
    if (*verify) return cmd_verify(o);
    if (*threshold) return cmd_threshold(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const GuaranteeUnavailable& e) {
    std::cerr << "error: " << e.what() << " (pass --allow-unguaranteed to run anyway)\n";
    return kInput;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const QuadratureFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DegeneratePlayer& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kInput;
}
