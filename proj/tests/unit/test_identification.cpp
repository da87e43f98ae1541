#include <gtest/gtest.h>

#include "covgame/identification.hpp"
#include "support/oracles.hpp"

using namespace covgame;

namespace {

StrategyPlan flat_plan(std::size_t n, double power = 0.3) {
  TimeSharingSchedule s;
  s.atoms.push_back({PowerProfile(n, power), UtilityVector(n, 1.0), 1.0});
  return make_plan(std::vector<double>(n, 1.0), s);
}

ProtocolResult run(const ObservationGraph& g, const StrategyPlan& plan, const DeviationSpec& d, Stage stages,
                   bool allow = false) {
  return play_protocol(g, plan, std::span<const DeviationSpec>(&d, 1), stages, ProtocolOptions{allow});
}

bool rank_ok(PhaseTag from, PhaseTag to) {
  auto r = [](PhaseTag t) { return t == PhaseTag::kCooperative ? 0 : t == PhaseTag::kIdentification ? 1 : 2; };
  return r(from) <= r(to);
}

}  // namespace

TEST(Protocol, NoDeviationStaysCooperative) {
  const auto plan = flat_plan(4);
  const auto r = play_protocol(ObservationGraph::cycle(4), plan, {}, 50);
  EXPECT_FALSE(r.first_detection.has_value());
  for (const auto& a : r.actions) EXPECT_EQ(a, PowerProfile(4, 0.3));
  for (const auto& tags : r.phases)
    for (PhaseTag t : tags) EXPECT_EQ(t, PhaseTag::kCooperative);
}

// Triangle, player 1 at full power from stage 1. Both others see it at
// stage 2; the only vertex whose timing fits is player 1 itself, so each
// convicts on entry, announces {1} = (1,0,0) and punishes once the budget
// n = 3 counted from the deviation stage has elapsed.
TEST(Protocol, TriangleHandSimulation) {
  const auto plan = flat_plan(3);
  const auto r = run(ObservationGraph::complete(3), plan, {0, 1, DeviationMode::kMaxPower}, 20);
  ASSERT_TRUE(r.first_detection.has_value());
  EXPECT_EQ(*r.first_detection, 2);
  for (PlayerId i : {1u, 2u}) {
    EXPECT_EQ(r.entry_stage[i], 2);
    ASSERT_TRUE(r.conviction[i].has_value());
    EXPECT_EQ(r.conviction[i]->suspect, 0u);
    EXPECT_EQ(r.conviction[i]->deviation_stage, 1);
    EXPECT_EQ(r.conviction_stage[i], 2);
    EXPECT_EQ(r.phases[0][i], PhaseTag::kCooperative);
    EXPECT_EQ(r.phases[1][i], PhaseTag::kIdentification);
    EXPECT_EQ(r.phases[2][i], PhaseTag::kIdentification);
    EXPECT_EQ(r.actions[0][i], 0.3);
    EXPECT_EQ(r.actions[1][i], plan.announce(i, true));
    EXPECT_EQ(r.actions[2][i], plan.announce(i, false));
    for (Stage t = 4; t <= 20; ++t) {
      EXPECT_EQ(r.phases[t - 1][i], PhaseTag::kPunishment);
      EXPECT_EQ(r.actions[t - 1][i], 1.0);
    }
  }
  EXPECT_EQ(r.final_phases[1].deviator, std::optional<PlayerId>(0));
}

// Square 1-2-3-4 with a chord 2-4: player 3 does not watch player 1.
TEST(Protocol, IndirectObserverConvictsFromAnnouncements) {
  ObservationGraph g = ObservationGraph::cycle(4);
  g.add_edge(1, 3);
  const auto plan = flat_plan(4);
  const auto r = run(g, plan, {0, 1, DeviationMode::kMaxPower}, 40);
  EXPECT_EQ(r.entry_stage[2], 3);
  ASSERT_TRUE(r.conviction[2].has_value());
  EXPECT_EQ(r.conviction[2]->suspect, 0u);
  EXPECT_EQ(r.conviction[2]->deviation_stage, 1);
  EXPECT_LE(r.conviction_stage[2], 2 + 12);
  // player 3 is not adjacent to the deviator, so it stays on the plan in punishment
  EXPECT_EQ(r.phases.back()[2], PhaseTag::kPunishment);
  EXPECT_EQ(r.actions.back()[2], 0.3);
}

TEST(Protocol, TwoPlayersIdentifyDirectly) {
  const auto plan = flat_plan(2);
  const auto r = run(ObservationGraph::complete(2), plan, {1, 3, DeviationMode::kOneShot}, 20);
  ASSERT_TRUE(r.conviction[0].has_value());
  EXPECT_EQ(r.conviction[0]->suspect, 1u);
  EXPECT_EQ(r.conviction[0]->deviation_stage, 3);
  EXPECT_EQ(*r.first_detection, 4);
  EXPECT_LE(r.conviction_stage[0], 4 + 2);
}

TEST(Protocol, SweepNeverConvictsInnocentsAndMeetsBudget) {
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto plan = flat_plan(n);
    const auto nb = static_cast<Stage>(plan.identification_budget);
    for (const auto& g : oracle::two_connected_classes(n))
      for (PlayerId k = 0; k < n; ++k)
        for (Stage t0 : {1, 4}) {
          std::vector<DeviationSpec> specs{{k, t0, DeviationMode::kMaxPower}, {k, t0, DeviationMode::kRandom, 7}};
          for (std::uint64_t seed = 1; seed <= 4; ++seed)
            specs.push_back({k, t0, DeviationMode::kMimic, seed, seed % 2 == 0});
          for (const auto& d : specs) {
            const auto r = run(g, plan, d, t0 + nb + 12);
            ASSERT_TRUE(r.first_detection.has_value());
            for (PlayerId i = 0; i < n; ++i) {
              if (i == k) continue;
              ASSERT_TRUE(r.conviction[i].has_value()) << "n=" << n << " k=" << k << " i=" << i;
              EXPECT_EQ(r.conviction[i]->suspect, k);
              EXPECT_LE(r.conviction_stage[i], *r.first_detection + nb);
              for (std::size_t t = 1; t < r.phases.size(); ++t)
                EXPECT_TRUE(rank_ok(r.phases[t - 1][i], r.phases[t][i]));
            }
          }
        }
  }
}

TEST(Protocol, PathGraphCanStayAmbiguous) {
  // Player 3 only sees player 2, so "1 deviated at stage 1" and "2 deviated at
  // stage 2 and is announcing {1}" look the same to it forever.
  const auto plan = flat_plan(3);
  const DeviationSpec d{0, 1, DeviationMode::kMaxPower};
  EXPECT_THROW(run(ObservationGraph::path(3), plan, d, 30), GuaranteeUnavailable);
  const auto r = run(ObservationGraph::path(3), plan, d, 30, true);
  EXPECT_FALSE(r.guaranteed);
  EXPECT_EQ(r.ambiguous, (std::vector<PlayerId>{2}));
  EXPECT_EQ(r.final_hypotheses[2], (std::vector<Hypothesis>{{0, 1}, {1, 2}}));
  EXPECT_FALSE(r.conviction[2].has_value());
  ASSERT_TRUE(r.conviction[1].has_value());
  EXPECT_EQ(r.conviction[1]->suspect, 0u);
}

TEST(Protocol, SeveralDeviatorsFlagged) {
  const auto plan = flat_plan(3);
  const std::vector<DeviationSpec> devs{{0, 1, DeviationMode::kMaxPower}, {1, 2, DeviationMode::kMaxPower}};
  const auto r = play_protocol(ObservationGraph::complete(3), plan, devs, 10);
  EXPECT_FALSE(r.guaranteed);
  EXPECT_NE(r.note.find("no guarantee"), std::string::npos);
}

TEST(Protocol, Validation) {
  const auto plan = flat_plan(3);
  DeviationSpec d{5, 1, DeviationMode::kMaxPower};
  EXPECT_THROW(run(ObservationGraph::complete(3), plan, d, 5), InvalidArgument);
  EXPECT_THROW(play_protocol(ObservationGraph::complete(4), plan, {}, 5), InvalidArgument);
  DeviationSpec bad{0, 1, DeviationMode::kMimic, 0, false, {{7}}};
  EXPECT_THROW(run(ObservationGraph::complete(3), plan, bad, 5), InvalidArgument);
}

TEST(Protocol, RandomDeviationDeterministic) {
  const auto plan = flat_plan(4);
  DeviationSpec d{2, 2, DeviationMode::kRandom, 42};
  const auto a = run(ObservationGraph::cycle(4), plan, d, 40);
  const auto b = run(ObservationGraph::cycle(4), plan, d, 40);
  EXPECT_EQ(a.actions, b.actions);
  d.seed = 43;
  const auto c = run(ObservationGraph::cycle(4), plan, d, 40);
  EXPECT_NE(a.actions, c.actions);
}

TEST(DeviationMode, Names) {
  for (auto m : {DeviationMode::kMaxPower, DeviationMode::kMimic, DeviationMode::kRandom, DeviationMode::kOneShot})
    EXPECT_EQ(deviation_mode_from_string(to_string(m)), m);
  EXPECT_FALSE(deviation_mode_from_string("sneaky").has_value());
}
