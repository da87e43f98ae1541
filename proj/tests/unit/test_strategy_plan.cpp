#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "covgame/strategy_plan.hpp"

using namespace covgame;

namespace {

TimeSharingSchedule two_atoms(double w0) {
  TimeSharingSchedule s;
  s.atoms.push_back({{1.0, 0.0}, {3.0, 0.0}, w0});
  s.atoms.push_back({{0.0, 1.0}, {0.0, 3.0}, 1.0 - w0});
  return s;
}

}  // namespace

TEST(Apportion, LargestRemainder) {
  EXPECT_EQ(detail::apportion({0.5, 0.5}, 100), (std::vector<std::size_t>{50, 50}));
  EXPECT_EQ(detail::apportion({1.0 / 3, 1.0 / 3, 1.0 / 3}, 100), (std::vector<std::size_t>{34, 33, 33}));
  EXPECT_EQ(detail::apportion({0.125, 0.875}, 10), (std::vector<std::size_t>{1, 9}));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> w(1 + rng() % 5);
    for (double& v : w) v = u(rng);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    const auto c = detail::apportion(w, 100);
    EXPECT_EQ(std::accumulate(c.begin(), c.end(), std::size_t{0}), 100u);
    for (std::size_t a = 0; a < w.size(); ++a) EXPECT_LT(std::abs(double(c[a]) - 100.0 * w[a] / sum), 1.0);
  }
}

TEST(Interleave, CountsAndSpread) {
  const std::vector<std::size_t> counts{50, 30, 20};
  const auto cyc = detail::interleave(counts);
  ASSERT_EQ(cyc.size(), 100u);
  std::vector<std::size_t> seen(3, 0);
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    ++seen[cyc[k]];
    for (std::size_t a = 0; a < 3; ++a)
      EXPECT_LE(std::abs(double(seen[a]) - double(counts[a]) * double(k + 1) / 100.0), 1.0);
  }
  EXPECT_EQ(seen, counts);
  EXPECT_EQ(detail::interleave({1, 1}), (std::vector<std::size_t>{0, 1}));
}

TEST(Alphabet, AvoidsPlanPowers) {
  EXPECT_EQ(detail::pick_alphabet(1.0, 1e-6, {0.3}), (std::pair<double, double>{0.0, 1.0}));
  EXPECT_EQ(detail::pick_alphabet(1.0, 1e-6, {0.0, 0.3}), (std::pair<double, double>{1.0, 0.5}));
  EXPECT_EQ(detail::pick_alphabet(2.0, 2e-6, {0.0, 2.0}), (std::pair<double, double>{1.0, 0.5}));
}

TEST(Plan, AnnouncementsDistinguishableFromSchedule) {
  const auto plan = make_plan({1.0, 1.0}, two_atoms(0.5));
  EXPECT_EQ(plan.block_length, 2u);
  EXPECT_EQ(plan.identification_budget, 2u);
  for (PlayerId i = 0; i < 2; ++i) {
    EXPECT_GT(std::abs(plan.announcement_low[i] - plan.announcement_high[i]), 2.0 * plan.epsilon[i]);
    for (const auto& a : plan.schedule.atoms) {
      EXPECT_EQ(plan.decode_bit(i, a.powers[i]), -1);
    }
    EXPECT_EQ(plan.decode_bit(i, plan.announce(i, false)), 0);
    EXPECT_EQ(plan.decode_bit(i, plan.announce(i, true)), 1);
  }
}

TEST(Plan, CycleFollowsWeights) {
  const auto plan = make_plan({1.0, 1.0}, two_atoms(0.3));
  ASSERT_EQ(plan.cycle.size(), 100u);
  EXPECT_EQ(plan.counts, (std::vector<std::size_t>{30, 70}));
  EXPECT_EQ(plan.cooperative_power(0, 1), plan.atom_at(101).powers[0]);
  const auto avg = plan.realized_average();
  EXPECT_NEAR(avg[0], 0.9, 1e-12);
  EXPECT_NEAR(avg[1], 2.1, 1e-12);
}

TEST(Plan, ZeroWeightAtomsDropped) {
  auto s = two_atoms(1.0);
  const auto plan = make_plan({1.0, 1.0}, s);
  EXPECT_EQ(plan.schedule.atoms.size(), 1u);
  EXPECT_EQ(plan.cycle, std::vector<std::size_t>(100, 0));
  EXPECT_EQ(first_deviation_opportunity(plan, 1), 1);
}

TEST(Plan, Validation) {
  EXPECT_THROW(make_plan({1.0}, two_atoms(0.5)), InvalidArgument);
  EXPECT_THROW(make_plan({0.5, 1.0}, two_atoms(0.5)), InvalidArgument);
  EXPECT_THROW(make_plan({1.0, 1.0}, TimeSharingSchedule{}), InvalidArgument);
}

TEST(CyclingError, BoundsDiscountedDeviation) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    TimeSharingSchedule s;
    const std::size_t atoms = 1 + rng() % 4;
    double total = 0.0;
    for (std::size_t a = 0; a < atoms; ++a) {
      const double w = u(rng);
      total += w;
      s.atoms.push_back({{0.2 * a, 0.1}, {3.0 * u(rng), 2.0 * u(rng)}, w});
    }
    for (auto& a : s.atoms) a.weight /= total;
    const UtilityVector ks = s.average();
    const auto plan = make_plan({1.0, 1.0}, s, ks);
    const double lambda = 0.01 + 0.9 * u(rng);
    const auto err = cycling_error(plan, lambda);
    for (PlayerId i = 0; i < 2; ++i) {
      double v = 0.0, w = lambda;
      const Stage T = 2000;
      for (Stage t = 1; t <= T; ++t, w *= 1.0 - lambda) v += w * plan.atom_at(t).utilities[i];
      const double ideal = ks[i] * (1.0 - std::pow(1.0 - lambda, double(T)));
      EXPECT_LE(std::abs(v - ideal), err[i] + 1e-12);
    }
  }
}

TEST(FirstOpportunity, FirstStageBelowMax) {
  const auto plan = make_plan({1.0, 1.0}, two_atoms(0.5));
  EXPECT_EQ(first_deviation_opportunity(plan, 0), 2);
  EXPECT_EQ(first_deviation_opportunity(plan, 1), 1);
}
