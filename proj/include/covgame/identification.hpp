#ifndef COVGAME_IDENTIFICATION_HPP
#define COVGAME_IDENTIFICATION_HPP

// Graph-local monitoring state machine. Innocent players follow the plan,
// switch to announcing suspect sets once a neighbour leaves the plan, narrow
// their hypotheses (suspect, deviation stage) from what their neighbours
// play, and punish a convicted deviator. Deviators are scripted by
// DeviationSpec.
//
// Timing: with a single deviator k first off the plan at t0, an innocent i
// enters identification exactly at t0 + dist(i, k), and announces from that
// stage on in blocks of l = S bits. Its first block carries the suspects
// compatible with the entry timing alone, which any neighbour can predict
// for a given hypothesis; later blocks carry its current suspect set, which
// under the true hypothesis always contains k. A hypothesis survives while
// every neighbour's play matches those predictions; only stages before
// t0 + n_bar are compared. The true hypothesis therefore always survives,
// and a singleton set is always the deviator.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "covgame/discounting.hpp"
#include "covgame/errors.hpp"
#include "covgame/obs_graph.hpp"
#include "covgame/strategy_plan.hpp"

namespace covgame {

enum class PhaseTag : char {
  kCooperative = 'C',
  kIdentification = 'I',
  kPunishment = 'P',
  kDeviating = 'D',
};

inline char to_char(PhaseTag t) { return static_cast<char>(t); }

struct Hypothesis {
  PlayerId suspect = 0;
  Stage deviation_stage = 1;
  friend auto operator<=>(const Hypothesis&, const Hypothesis&) = default;
};

struct GamePhase {
  PhaseTag tag = PhaseTag::kCooperative;
  Stage entered_at = 0;          // identification entry stage
  std::size_t block_index = 0;   // current announcement block
  std::vector<Hypothesis> hypotheses;
  std::optional<PlayerId> deviator;  // set in punishment
};

enum class DeviationMode { kMaxPower, kMimic, kRandom, kOneShot };

inline std::string_view to_string(DeviationMode m) {
  switch (m) {
    case DeviationMode::kMaxPower: return "max_power";
    case DeviationMode::kMimic: return "mimic";
    case DeviationMode::kRandom: return "random";
    case DeviationMode::kOneShot: return "one_shot";
  }
  return "?";
}

inline std::optional<DeviationMode> deviation_mode_from_string(std::string_view s) {
  if (s == "max_power") return DeviationMode::kMaxPower;
  if (s == "mimic") return DeviationMode::kMimic;
  if (s == "random") return DeviationMode::kRandom;
  if (s == "one_shot") return DeviationMode::kOneShot;
  return std::nullopt;
}

struct DeviationSpec {
  PlayerId player = 0;
  Stage start_stage = 0;  // 0: first stage where full power is off the plan
  DeviationMode mode = DeviationMode::kMaxPower;
  std::uint64_t seed = 0;  // random powers, or random mimic subsets
  bool open_max = false;   // mimic: one full-power stage before announcing
  std::vector<std::vector<PlayerId>> subsets;  // mimic: per-block subsets, cycled

  friend bool operator==(const DeviationSpec&, const DeviationSpec&) = default;
};

struct HistoryRecord {
  double own = 0.0;               // own action at this stage
  std::vector<double> observed;   // neighbour actions at the previous stage
};

/// What player `owner` knows: record t holds its stage-t action and the
/// stage t-1 actions of its neighbours (empty at stage 1).
struct PrivateHistory {
  PlayerId owner = 0;
  std::vector<PlayerId> neighbors;
  std::vector<HistoryRecord> records;

  /// Action of neighbors[k] at stage sigma; needs the record of stage sigma + 1.
  double neighbor_action(std::size_t k, Stage sigma) const { return records[static_cast<std::size_t>(sigma)].observed[k]; }
};

namespace detail {

inline constexpr Stage kNever = std::numeric_limits<Stage>::max();
using Mask = std::uint64_t;
using DistTable = std::vector<std::vector<int>>;

inline Stage add_dist(Stage t, int d) { return d == ObservationGraph::kUnreachable ? kNever : t + d; }

/// Stage at which player m first leaves the plan under hypothesis (k, t).
inline Stage predicted_first_off(const DistTable& dist, PlayerId m, const Hypothesis& h) {
  return m == h.suspect ? h.deviation_stage : add_dist(h.deviation_stage, dist[m][h.suspect]);
}

/// Suspects player j can hold on entering at `entry`, given when each of its
/// neighbours first left the plan (first_off[k] for neighbors(j)[k]).
inline Mask timing_set(const ObservationGraph& g, const DistTable& dist, PlayerId j, Stage entry,
                       const std::vector<PlayerId>& nbrs, const std::vector<Stage>& first_off) {
  Mask out = 0;
  for (PlayerId k = 0; k < g.size(); ++k) {
    if (k == j || dist[j][k] == ObservationGraph::kUnreachable) continue;
    const Hypothesis h{k, entry - dist[j][k]};
    if (h.deviation_stage < 1) continue;
    bool ok = true;
    for (std::size_t q = 0; q < nbrs.size() && ok; ++q) {
      const Stage f = predicted_first_off(dist, nbrs[q], h);
      const Stage seen = first_off[q] <= entry - 1 ? first_off[q] : kNever;
      ok = f <= entry - 1 ? seen == f : seen == kNever;
    }
    if (ok) out |= Mask{1} << k;
  }
  return out;
}

/// First block of player j (j not the suspect) if hypothesis h were true.
inline Mask predicted_first_block(const ObservationGraph& g, const DistTable& dist, PlayerId j, const Hypothesis& h) {
  const Stage entry = predicted_first_off(dist, j, h);
  const auto nbrs = g.neighbors(j);
  std::vector<Stage> first_off;
  for (PlayerId m : nbrs) first_off.push_back(predicted_first_off(dist, m, h));
  return timing_set(g, dist, j, entry, nbrs, first_off);
}

}  // namespace detail

/// Innocent player: plan, identification, punishment.
class InnocentAgent {
 public:
  InnocentAgent(PlayerId self, const ObservationGraph& graph, const detail::DistTable& dist, const StrategyPlan& plan)
      : graph_(&graph), dist_(&dist), plan_(&plan) {
    history_.owner = self;
    history_.neighbors = graph.neighbors(self);
    first_off_.assign(history_.neighbors.size(), detail::kNever);
  }

  PlayerId id() const { return history_.owner; }
  const PrivateHistory& history() const { return history_; }
  PhaseTag tag() const { return tag_; }
  Stage entry_stage() const { return entry_; }
  const std::optional<Hypothesis>& conviction() const { return conviction_; }
  Stage conviction_stage() const { return conviction_stage_; }

  std::vector<Hypothesis> hypotheses() const {
    std::vector<Hypothesis> out;
    for (const auto& h : hyps_) out.push_back(h.h);
    return out;
  }

  /// Suspects announced in each block so far (block 0 is the timing set).
  const std::vector<detail::Mask>& announced_blocks() const { return blocks_; }

  GamePhase phase() const {
    GamePhase p;
    p.tag = tag_;
    p.entered_at = entry_ == detail::kNever ? 0 : entry_;
    p.block_index = blocks_.empty() ? 0 : blocks_.size() - 1;
    p.hypotheses = hypotheses();
    if (tag_ == PhaseTag::kPunishment && conviction_) p.deviator = conviction_->suspect;
    return p;
  }

  /// Chooses the stage-s action; `observed` holds the neighbours' stage s-1
  /// actions (ignored at s = 1).
  double act(Stage s, const std::vector<double>& observed) {
    const PlayerId self = id();
    history_.records.push_back({0.0, s > 1 ? observed : std::vector<double>{}});
    if (s > 1) absorb(s, s - 1);

    double action = plan_->cooperative_power(self, s);
    if (tag_ == PhaseTag::kIdentification && conviction_ &&
        s >= conviction_->deviation_stage + static_cast<Stage>(plan_->identification_budget)) {
      tag_ = PhaseTag::kPunishment;
    }
    if (tag_ == PhaseTag::kPunishment) {
      if (graph_->adjacent(self, conviction_->suspect)) action = plan_->p_max[self];
    } else if (tag_ == PhaseTag::kIdentification) {
      const auto l = static_cast<Stage>(plan_->block_length);
      const auto block = static_cast<std::size_t>((s - entry_) / l);
      const auto pos = static_cast<std::size_t>((s - entry_) % l);
      while (blocks_.size() <= block) blocks_.push_back(current_mask());
      action = plan_->announce(self, (blocks_[block] >> pos) & 1U);
    }
    history_.records.back().own = action;
    return action;
  }

 private:
  struct Tracked {
    Hypothesis h;
    std::vector<detail::Mask> first_block;  // per neighbour
  };

  detail::Mask current_mask() const {
    detail::Mask m = 0;
    for (const auto& t : hyps_) m |= detail::Mask{1} << t.h.suspect;
    return m;
  }

  void absorb(Stage s, Stage sigma) {
    const PlayerId self = id();
    bool any_off = false;
    for (std::size_t q = 0; q < history_.neighbors.size(); ++q) {
      if (!plan_->on_plan(history_.neighbors[q], sigma, history_.neighbor_action(q, sigma))) {
        any_off = true;
        if (first_off_[q] == detail::kNever) first_off_[q] = sigma;
      }
    }
    if (tag_ == PhaseTag::kCooperative) {
      if (!any_off) return;
      tag_ = PhaseTag::kIdentification;
      entry_ = s;
      const detail::Mask timing =
          detail::timing_set(*graph_, *dist_, self, entry_, history_.neighbors, first_off_);
      for (PlayerId k = 0; k < graph_->size(); ++k) {
        if (!((timing >> k) & 1U)) continue;
        Tracked t{{k, entry_ - (*dist_)[self][k]}, {}};
        for (PlayerId j : history_.neighbors)
          t.first_block.push_back(j == k ? 0 : detail::predicted_first_block(*graph_, *dist_, j, t.h));
        hyps_.push_back(std::move(t));
      }
      blocks_.push_back(timing);
      for (Stage past = 1; past <= sigma; ++past) filter(past);
    } else if (tag_ == PhaseTag::kIdentification) {
      filter(sigma);
    }
    if (!conviction_ && hyps_.size() == 1) {
      conviction_ = hyps_.front().h;
      conviction_stage_ = s;
    }
  }

  void filter(Stage sigma) {
    std::erase_if(hyps_, [&](const Tracked& t) { return !consistent(t, sigma); });
  }

  bool consistent(const Tracked& t, Stage sigma) const {
    const Hypothesis& h = t.h;
    if (sigma >= h.deviation_stage + static_cast<Stage>(plan_->identification_budget)) return true;
    const auto l = static_cast<Stage>(plan_->block_length);
    for (std::size_t q = 0; q < history_.neighbors.size(); ++q) {
      const PlayerId j = history_.neighbors[q];
      const double a = history_.neighbor_action(q, sigma);
      if (j == h.suspect) {
        if (sigma < h.deviation_stage && !plan_->on_plan(j, sigma, a)) return false;
        if (sigma == h.deviation_stage && plan_->on_plan(j, sigma, a)) return false;
        continue;
      }
      const Stage e = detail::predicted_first_off(*dist_, j, h);
      if (sigma < e) {
        if (!plan_->on_plan(j, sigma, a)) return false;
        continue;
      }
      const int bit = plan_->decode_bit(j, a);
      if (bit < 0) return false;
      const Stage block = (sigma - e) / l;
      const auto pos = static_cast<std::size_t>((sigma - e) % l);
      if (block == 0) {
        if (bit != static_cast<int>((t.first_block[q] >> pos) & 1U)) return false;
      } else if (pos == h.suspect && bit != 1) {
        return false;
      }
    }
    return true;
  }

  const ObservationGraph* graph_;
  const detail::DistTable* dist_;
  const StrategyPlan* plan_;
  PrivateHistory history_;
  PhaseTag tag_ = PhaseTag::kCooperative;
  Stage entry_ = detail::kNever;
  std::vector<Stage> first_off_;
  std::vector<Tracked> hyps_;
  std::vector<detail::Mask> blocks_;
  std::optional<Hypothesis> conviction_;
  Stage conviction_stage_ = 0;
};

/// Scripted deviator. Plays the plan before its start stage.
class DeviatorAgent {
 public:
  DeviatorAgent(DeviationSpec spec, const StrategyPlan& plan) : spec_(std::move(spec)), plan_(&plan), rng_(spec_.seed) {
    if (spec_.start_stage == 0) spec_.start_stage = first_deviation_opportunity(plan, spec_.player);
    if (spec_.start_stage < 1) throw InvalidArgument("deviation start stage must be >= 1");
    for (const auto& block : spec_.subsets)
      for (PlayerId k : block)
        if (k >= plan.players()) throw InvalidArgument("mimic subset names an unknown player");
  }

  const DeviationSpec& spec() const { return spec_; }
  PlayerId id() const { return spec_.player; }

  double act(Stage s) {
    const PlayerId k = spec_.player;
    const Stage s0 = spec_.start_stage;
    if (s < s0) return plan_->cooperative_power(k, s);
    switch (spec_.mode) {
      case DeviationMode::kMaxPower: return plan_->p_max[k];
      case DeviationMode::kOneShot: return s == s0 ? plan_->p_max[k] : plan_->cooperative_power(k, s);
      case DeviationMode::kRandom: return unit() * plan_->p_max[k];
      case DeviationMode::kMimic: {
        if (spec_.open_max && s == s0) return plan_->p_max[k];
        const Stage offset = s - (spec_.open_max ? s0 + 1 : s0);
        const auto l = static_cast<Stage>(plan_->block_length);
        const auto block = static_cast<std::size_t>(offset / l);
        const auto pos = static_cast<std::size_t>(offset % l);
        while (masks_.size() <= block) masks_.push_back(next_mask());
        return plan_->announce(k, (masks_[block] >> pos) & 1U);
      }
    }
    return plan_->cooperative_power(k, s);
  }

 private:
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  detail::Mask next_mask() {
    if (!spec_.subsets.empty()) {
      const auto& set = spec_.subsets[masks_.size() % spec_.subsets.size()];
      detail::Mask m = 0;
      for (PlayerId p : set) m |= detail::Mask{1} << p;
      return m;
    }
    const std::size_t n = plan_->players();
    const detail::Mask all = n >= 64 ? ~detail::Mask{0} : (detail::Mask{1} << n) - 1;
    return rng_() & all;
  }

  DeviationSpec spec_;
  const StrategyPlan* plan_;
  std::mt19937_64 rng_;
  std::vector<detail::Mask> masks_;
};

struct ProtocolOptions {
  bool allow_unguaranteed = false;  // run even when the graph cannot guarantee identification
};

struct ProtocolResult {
  std::vector<PowerProfile> actions;             // actions[t-1]
  std::vector<std::vector<PhaseTag>> phases;     // phases[t-1][i]
  std::vector<GamePhase> final_phases;
  std::vector<std::optional<Hypothesis>> conviction;  // innocents only
  std::vector<Stage> conviction_stage;                // 0 if never
  std::vector<std::vector<Hypothesis>> final_hypotheses;
  std::vector<Stage> entry_stage;                     // 0 if never
  std::optional<Stage> first_detection;
  std::vector<Stage> deviation_stage;                 // first off-plan stage per deviator, 0 if never
  std::vector<PlayerId> deviators;
  std::vector<PlayerId> ambiguous;     // identifying innocents left with several suspects
  std::vector<PlayerId> inconsistent;  // identifying innocents left with no hypothesis
  bool guaranteed = true;              // graph and deviator count satisfy the identification contract
  std::string note;
};

/// True when the graph supports the identification guarantee.
inline bool identification_guaranteed(const ObservationGraph& g) {
  if (g.size() <= 1) return true;
  if (g.size() == 2) return g.is_complete();
  return g.is_two_connected();
}

/// Plays `stages` stages of the monitoring protocol.
inline ProtocolResult play_protocol(const ObservationGraph& graph, const StrategyPlan& plan,
                                    std::span<const DeviationSpec> deviations, Stage stages,
                                    const ProtocolOptions& options = {}) {
  const std::size_t n = plan.players();
  if (graph.size() != n) throw InvalidArgument("observation graph size differs from the number of players");
  if (n > 64) throw CapExceeded("identification protocol supports at most 64 players");
  if (stages < 1) throw InvalidArgument("need at least one stage");

  ProtocolResult out;
  std::vector<std::optional<std::size_t>> deviator_of(n);
  std::vector<DeviatorAgent> deviators;
  for (const auto& d : deviations) {
    if (d.player >= n) throw InvalidArgument("deviation names an unknown player");
    if (deviator_of[d.player]) throw InvalidArgument("two deviations for the same player");
    deviator_of[d.player] = deviators.size();
    deviators.emplace_back(d, plan);
    out.deviators.push_back(d.player);
  }
  if (!deviations.empty() && !identification_guaranteed(graph)) {
    if (!options.allow_unguaranteed)
      throw GuaranteeUnavailable("observation graph is not 2-connected; deviator identification is not guaranteed");
    out.guaranteed = false;
    out.note = "graph not 2-connected: identification may not converge";
  }
  if (deviations.size() > 1) {
    out.guaranteed = false;
    out.note = "several simultaneous deviators: no guarantee";
  }

  const auto dist = graph.shortest_path_lengths();
  std::vector<std::optional<InnocentAgent>> innocents(n);
  for (PlayerId i = 0; i < n; ++i)
    if (!deviator_of[i]) innocents[i].emplace(i, graph, dist, plan);
  std::vector<std::vector<PlayerId>> nbrs(n);
  for (PlayerId i = 0; i < n; ++i) nbrs[i] = graph.neighbors(i);

  out.deviation_stage.assign(deviators.size(), 0);
  out.actions.reserve(static_cast<std::size_t>(stages));
  out.phases.reserve(static_cast<std::size_t>(stages));
  std::vector<double> observed;
  for (Stage s = 1; s <= stages; ++s) {
    PowerProfile a(n, 0.0);
    std::vector<PhaseTag> tags(n, PhaseTag::kCooperative);
    for (PlayerId i = 0; i < n; ++i) {
      if (deviator_of[i]) {
        auto& d = deviators[*deviator_of[i]];
        a[i] = d.act(s);
        if (s >= d.spec().start_stage) tags[i] = PhaseTag::kDeviating;
        auto& first = out.deviation_stage[*deviator_of[i]];
        if (first == 0 && !plan.on_plan(i, s, a[i])) first = s;
        continue;
      }
      observed.clear();
      if (s > 1)
        for (PlayerId j : nbrs[i]) observed.push_back(out.actions.back()[j]);
      a[i] = innocents[i]->act(s, observed);
      tags[i] = innocents[i]->tag();
      if (tags[i] != PhaseTag::kCooperative && !out.first_detection) out.first_detection = s;
    }
    out.actions.push_back(std::move(a));
    out.phases.push_back(std::move(tags));
  }

  out.conviction.resize(n);
  out.conviction_stage.assign(n, 0);
  out.entry_stage.assign(n, 0);
  out.final_hypotheses.resize(n);
  for (PlayerId i = 0; i < n; ++i) {
    GamePhase p;
    if (innocents[i]) {
      const auto& agent = *innocents[i];
      p = agent.phase();
      out.conviction[i] = agent.conviction();
      out.conviction_stage[i] = agent.conviction_stage();
      out.entry_stage[i] = p.entered_at;
      out.final_hypotheses[i] = p.hypotheses;
      if (agent.tag() == PhaseTag::kIdentification) {
        if (p.hypotheses.empty()) out.inconsistent.push_back(i);
        else if (p.hypotheses.size() > 1) out.ambiguous.push_back(i);
      }
    } else {
      p.tag = out.phases.back()[i];
    }
    out.final_phases.push_back(std::move(p));
  }
  return out;
}

}  // namespace covgame

#endif  // COVGAME_IDENTIFICATION_HPP
