#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "covgame/geometry_channel.hpp"
#include "support/oracles.hpp"

using namespace covgame;

namespace {

Scenario single(GainMode mode, double p_max = 5.0, double noise = 1.0) {
  Scenario sc;
  sc.sbs = {oracle::sbs_at(0.0, 0.0)};
  sc.sbs[0].p_max = p_max;
  sc.noise_power = noise;
  sc.gain_mode = mode;
  return sc;
}

}  // namespace

TEST(Distance, VerticalOffsetOnly) {
  SbsConfig s;
  s.location = {0, 0, 1};
  EXPECT_DOUBLE_EQ(distance_to_plane(s, 0, 0), 1.0);
}

TEST(Distance, ThreeFourFive) {
  SbsConfig s;
  s.location = {0, 0, 1};
  EXPECT_NEAR(distance_to_plane(s, 3, 0), std::sqrt(10.0), 1e-15);
}

TEST(Distance, NegativeHeightLowerBound) {
  SbsConfig s;
  s.location = {2, 1, -2};
  EXPECT_DOUBLE_EQ(distance_to_plane(s, 2, 1), 2.0);
}

TEST(Gain, ConstantInsideRange) {
  auto sc = single(GainMode::kConstantOverRange);
  EXPECT_DOUBLE_EQ(channel_gain(sc, 0, 3.0, 4.0), 1.0);
}

TEST(Gain, ZeroOutsideRangeInEveryMode) {
  for (auto mode : {GainMode::kPaperCompound, GainMode::kStandardPathloss, GainMode::kConstantOverRange}) {
    auto sc = single(mode);
    EXPECT_EQ(channel_gain(sc, 0, 10.5, 0.0), 0.0) << to_string(mode);
    EXPECT_EQ(channel_gain(sc, 0, 0.0, -50.0), 0.0) << to_string(mode);
  }
}

TEST(Gain, PaperCompoundDirectSubstitution) {
  auto sc = single(GainMode::kPaperCompound);
  // d = 2 at ground distance sqrt(3) from an SBS at height 1.
  EXPECT_NEAR(channel_gain(sc, 0, std::sqrt(3.0), 0.0), 0.015625, 1e-15);
}

TEST(Gain, StandardPathlossDirectSubstitution) {
  auto sc = single(GainMode::kStandardPathloss);
  EXPECT_NEAR(channel_gain(sc, 0, std::sqrt(3.0), 0.0), 0.125, 1e-15);
}

TEST(Gain, CrossConstantsDefaultToOwn) {
  auto sc = oracle::symmetric_pair();
  sc.sbs[1].b_self = 2.5;
  EXPECT_DOUBLE_EQ(channel_gain(sc, 1, 1.0, 0.0, 0), 2.5);
  sc.sbs[1].b_cross = {0.7, 2.5};
  EXPECT_DOUBLE_EQ(channel_gain(sc, 1, 1.0, 0.0, 0), 0.7);
  EXPECT_DOUBLE_EQ(channel_gain(sc, 1, 1.0, 0.0), 2.5);
}

TEST(Gain, UnknownSbsRejected) {
  auto sc = single(GainMode::kConstantOverRange);
  EXPECT_THROW(channel_gain(sc, 3, 0, 0), InvalidArgument);
}

TEST(Sinr, SingleSbsNoInterference) {
  auto sc = single(GainMode::kConstantOverRange);
  EXPECT_DOUBLE_EQ(sinr(sc, 0, 1.0, 1.0, {2.0}), 2.0);
}

TEST(Sinr, OutsideOwnRangeIsZero) {
  auto sc = single(GainMode::kConstantOverRange);
  EXPECT_EQ(sinr(sc, 0, 40.0, 0.0, {2.0}), 0.0);
}

TEST(Sinr, TwoOverlappingUnitGains) {
  auto sc = oracle::symmetric_pair(5.0, 1.0);
  EXPECT_DOUBLE_EQ(sinr(sc, 0, 2.5, 0.0, {1.0, 1.0}), 0.5);
}

TEST(Sinr, PowerOutOfRangeRejected) {
  auto sc = oracle::symmetric_pair();
  EXPECT_THROW(sinr(sc, 0, 0, 0, {1.5, 0.0}), InvalidArgument);
  EXPECT_THROW(sinr(sc, 0, 0, 0, {-0.1, 0.0}), InvalidArgument);
  EXPECT_THROW(sinr(sc, 0, 0, 0, {1.0}), InvalidArgument);
}

TEST(SinrProperty, MonotoneInPowersAndBounded) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    const auto sc = oracle::random_scenario(rng, 3);
    for (int k = 0; k < 50; ++k) {
      const double x = -4.0 + 14.0 * u(rng);
      const double y = -4.0 + 14.0 * u(rng);
      PowerProfile p{u(rng) * sc.sbs[0].p_max, u(rng) * sc.sbs[1].p_max, u(rng) * sc.sbs[2].p_max};
      const double base = sinr(sc, 0, x, y, p);
      EXPECT_LE(base, channel_gain(sc, 0, x, y) * sc.sbs[0].p_max / sc.noise_power + 1e-12);
      auto up_own = p;
      up_own[0] = sc.sbs[0].p_max;
      EXPECT_GE(sinr(sc, 0, x, y, up_own), base);
      for (std::size_t j : {1u, 2u}) {
        auto up = p;
        up[j] = sc.sbs[j].p_max;
        EXPECT_LE(sinr(sc, 0, x, y, up), base);
      }
    }
  }
}

TEST(Density, UniformMassSpreadsOverDisc) {
  auto s = oracle::sbs_at(0, 0);
  s.density = UniformDensity{3.0};
  EXPECT_NEAR(density_at(s, 1.0, 1.0), 3.0 / (std::numbers::pi * 100.0), 1e-15);
  EXPECT_EQ(density_at(s, 11.0, 0.0), 0.0);
}

TEST(Density, GridIsBilinearAndZeroOutside) {
  auto s = oracle::sbs_at(1, 1);
  s.density = GridDensity{-1.0, -1.0, 1.0, 3, 3, {0, 0, 0, 0, 4, 0, 0, 0, 0}};
  EXPECT_DOUBLE_EQ(density_at(s, 1.0, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(density_at(s, 1.5, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(density_at(s, 1.5, 1.5), 1.0);
  EXPECT_EQ(density_at(s, 3.5, 1.0), 0.0);
}

TEST(Validate, RejectsEachBrokenInvariant) {
  const auto good = oracle::symmetric_pair();
  EXPECT_NO_THROW(validate(good));
  auto bad = good;
  bad.sbs[0].location.z = 0.0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.sbs[1].location = bad.sbs[0].location;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.sbs[0].gamma = 2.0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.sbs[0].p_max = 0.0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.noise_power = 0.0;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.sbs[0].radius = 0.5;
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.sbs[0].b_cross = {1.0};
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad = good;
  bad.sbs[0].density = UniformDensity{-1.0};
  EXPECT_THROW(validate(bad), InvalidArgument);
  bad.sbs.clear();
  EXPECT_THROW(validate(bad), InvalidArgument);
}

TEST(GainMode, NamesRoundTrip) {
  for (auto mode : {GainMode::kPaperCompound, GainMode::kStandardPathloss, GainMode::kConstantOverRange})
    EXPECT_EQ(gain_mode_from_string(to_string(mode)), mode);
  EXPECT_FALSE(gain_mode_from_string("log-distance").has_value());
}
