#include "mfgpoa/social_cost.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mfgpoa/errors.h"
#include "support.h"

namespace mfgpoa {
namespace {

// Reference costs from an independent adaptive ODE integration of the state
// moments and running costs (relative tolerance 1e-13).
constexpr double kDefaultScMfg = 2.64334793434247;
constexpr double kDefaultScMkv = 2.53240356500923;
constexpr double kDefaultPoa = 1.04380990884162;

GTEST_TEST(SocialCostTest, DefaultsMatchReference) {
  const ModelParams p = ModelParams::Defaults();
  const CostReport r = PriceOfAnarchy(p, TimeGrid(p.T, 2001));
  EXPECT_NEAR(r.sc_mfg, kDefaultScMfg, 1e-12);
  EXPECT_NEAR(r.sc_mkv, kDefaultScMkv, 1e-12);
  EXPECT_NEAR(r.poa, kDefaultPoa, 1e-12);
  EXPECT_NEAR(r.delta_direct, r.delta_prop2, 1e-11);
  EXPECT_NEAR(r.breakdown_mfg.total(), r.sc_mfg, 1e-15);
  EXPECT_NEAR(r.breakdown_mkv.total(), r.sc_mkv, 1e-15);
  // The variance-driven part is common to both costs.
  EXPECT_EQ(r.breakdown_mfg.terminal_variance, r.breakdown_mkv.terminal_variance);
  EXPECT_EQ(r.breakdown_mfg.running_variance, r.breakdown_mkv.running_variance);
  EXPECT_NEAR(r.h_var,
              r.breakdown_mkv.terminal_variance + r.breakdown_mkv.running_variance,
              1e-15);
}

GTEST_TEST(SocialCostTest, RandomVarianceModelMatchesReference) {
  ModelParams p = ModelParams::Defaults();
  p.xi_var = 0.4;
  p.sigma = 0.6;
  p.T = 1.7;
  p.b1_bar = 0.3;
  p.s = 0.2;
  const CostReport r = PriceOfAnarchy(p, TimeGrid(p.T, 2001));
  EXPECT_NEAR(r.sc_mfg, 2.83594148413749, 1e-11);
  EXPECT_NEAR(r.sc_mkv, 2.80210853405967, 1e-11);
  EXPECT_NEAR(r.poa, 1.01207410407791, 1e-11);
}

GTEST_TEST(SocialCostTest, SingleCostMatchesReport) {
  const ModelParams p = ModelParams::Defaults();
  const TimeGrid grid(p.T, 2001);
  const DerivedCoefficients d = Derive(p);
  EXPECT_NEAR(SocialCost(p, d, Kind::kMfg, grid).cost, kDefaultScMfg, 1e-12);
  EXPECT_NEAR(SocialCost(p, d, Kind::kMkv, grid).cost, kDefaultScMkv, 1e-12);
  EXPECT_NEAR(DeltaSc(p, d, grid), kDefaultScMfg - kDefaultScMkv, 1e-11);
}

GTEST_TEST(SocialCostTest, RouteEquivalenceAndShortcutOnRandomModels) {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 40) {
    const ModelParams p = testing::RandomParams(rng);
    if (!Validate(p).assumption1_ok) continue;
    const GameSolution game = SolveGame(p, TimeGrid(p.T, 2001));
    const CostReport r = PriceOfAnarchyOf(game);
    EXPECT_LE(std::abs(r.delta_direct - r.delta_prop2),
              std::max(1e-8, 1e-8 * r.sc_mkv));
    EXPECT_NEAR(PlannerCostShortcut(game), r.sc_mkv, 1e-8 * r.sc_mkv);
    EXPECT_GE(r.poa, 1.0 - 1e-10);
    EXPECT_NEAR(r.poa, 1.0 + r.delta_prop2 / r.sc_mkv, 0.0);
    ++checked;
  }
}

GTEST_TEST(SocialCostTest, ZeroInitialMeanIsEfficient) {
  ModelParams p = ModelParams::Defaults();
  p.xi_mean = 0.0;
  p.xi_var = 0.5;
  const CostReport r = PriceOfAnarchy(p, TimeGrid(p.T, 2001));
  EXPECT_NEAR(r.poa, 1.0, 1e-10);
  EXPECT_EQ(r.delta_prop2, 0.0);
  const EfficiencyVerdict v = Efficiency(p);
  EXPECT_TRUE(v.poa_is_one);
  EXPECT_EQ(v.reason, EfficiencyReason::kMeanZero);
}

GTEST_TEST(SocialCostTest, DegeneratePlannerCost) {
  ModelParams p = ModelParams::Defaults();
  p.sigma = 0.0;
  p.xi_var = 0.0;
  p.xi_mean = 0.0;
  EXPECT_THROW(PriceOfAnarchy(p, TimeGrid(p.T, 101)), DegenerateCostError);
}

GTEST_TEST(EfficiencyTest, DefaultsAreNotEfficient) {
  const EfficiencyVerdict v = Efficiency(ModelParams::Defaults());
  EXPECT_FALSE(v.poa_is_one);
  EXPECT_EQ(v.reason, EfficiencyReason::kNotEfficient);
  EXPECT_FALSE(v.prop1_sufficient);
  EXPECT_NEAR(v.residuals.terminal_gap, 0.625, 1e-15);
  EXPECT_NEAR(v.residuals.running_gap, 0.625, 1e-15);
  EXPECT_NEAR(v.residuals.stationary_u, 1.25, 1e-14);
  EXPECT_NEAR(v.residuals.implied_constant, 0.25, 1e-15);
}

GTEST_TEST(EfficiencyTest, NoInteractionThroughDriftBranch) {
  ModelParams p = ModelParams::Defaults();
  p.b2_bar = 0.0;
  p.r_bar = 0.0;
  p.b1_bar = 0.0;
  p.s = 1.0;
  p.s_T = 1.0;
  const EfficiencyVerdict v = Efficiency(p);
  EXPECT_TRUE(v.poa_is_one);
  EXPECT_EQ(v.reason, EfficiencyReason::kB1BarZero);
  EXPECT_TRUE(v.prop1_sufficient);
  EXPECT_TRUE(std::isnan(v.residuals.implied_constant));
  EXPECT_NEAR(PriceOfAnarchy(p, TimeGrid(p.T, 2001)).poa, 1.0, 1e-12);
}

GTEST_TEST(EfficiencyTest, StationaryBranch) {
  // lambda = 1 (b2_bar = r_bar = 0) and D^u = D^w = 4 with s_T = 0; q, q_bar
  // and s put both Riccati curves at their terminal value.
  ModelParams p = ModelParams::Defaults();
  p.b2_bar = 0.0;
  p.r_bar = 0.0;
  p.b1 = 0.1;
  p.b1_bar = 0.2;
  p.q_T = 0.0;
  p.q_bar_T = 4.0;
  p.s_T = 0.0;
  // B = 1, D = 4: C^u = 16 - 2(0.2)4 = 14.4, C^w = 16 - 2(0.3)4 = 13.6.
  // q + q_bar (1 - s) = 14.4 and q + q_bar (1 - s)^2 = 13.6 with s = 0.5.
  p.s = 0.5;
  p.q_bar = 3.2;
  p.q = 12.8;
  const EfficiencyVerdict v = Efficiency(p);
  EXPECT_TRUE(v.poa_is_one);
  EXPECT_EQ(v.reason, EfficiencyReason::kB1BarPositive);
  EXPECT_LE(v.residuals.stationary_u, 1e-12);
  EXPECT_LE(v.residuals.stationary_w, 1e-12);
  EXPECT_NEAR(PriceOfAnarchy(p, TimeGrid(p.T, 2001)).poa, 1.0, 1e-12);
  // With lambda = 1 the pointwise coupling conditions also hold.
  EXPECT_TRUE(v.prop1_sufficient);
}

GTEST_TEST(EfficiencyTest, ControlsOnlyEfficientIffUnitLambda) {
  ModelParams p = ModelParams::Defaults();
  p.b1_bar = 0.0;
  p.q_bar = 0.0;
  p.q_bar_T = 0.0;
  EXPECT_FALSE(Efficiency(p).poa_is_one);
  p.b2_bar = 0.0;
  p.r_bar = 0.0;
  EXPECT_TRUE(Efficiency(p).poa_is_one);
}

GTEST_TEST(CostReportJsonTest, RoundTripReproducesPoa) {
  const ModelParams p = ModelParams::Defaults();
  const CostReport r = PriceOfAnarchy(p, TimeGrid(p.T, 2001));
  const CostReport back = CostReportFromJson(CostReportToJson(r));
  EXPECT_EQ(back.sc_mfg, r.sc_mfg);
  EXPECT_EQ(back.sc_mkv, r.sc_mkv);
  EXPECT_EQ(back.poa, r.poa);
  EXPECT_EQ(back.breakdown_mkv.running_mean, r.breakdown_mkv.running_mean);
  EXPECT_EQ(1.0 + back.delta_prop2 / back.sc_mkv, back.poa);
  EXPECT_THROW(CostReportFromJson("{}"), ParseError);
}

GTEST_TEST(EfficiencyJsonTest, NanWrittenAsNull) {
  ModelParams p = ModelParams::Defaults();
  p.b1_bar = 0.0;
  const std::string text = EfficiencyToJson(Efficiency(p));
  EXPECT_NE(text.find("\"implied_constant\": null"), std::string::npos);
  EXPECT_NE(text.find("\"reason\": \"NOT_EFFICIENT\""), std::string::npos);
}

}  // namespace
}  // namespace mfgpoa
