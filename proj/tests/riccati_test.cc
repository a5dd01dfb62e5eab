#include "mfgpoa/riccati.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mfgpoa/errors.h"

namespace mfgpoa {
namespace {

GTEST_TEST(RiccatiTest, DefaultRootsAndDrift) {
  const RiccatiEval u = SolveRiccati({-1.5, 3.2, 0.625, 0.625}, 1.0);
  EXPECT_EQ(u.regime(), RiccatiRegime::kFull);
  EXPECT_NEAR(u.delta_plus(), 1.5 + std::sqrt(4.25), 1e-14);
  EXPECT_NEAR(u.delta_minus(), 1.5 - std::sqrt(4.25), 1e-14);
  EXPECT_NEAR(u.Drift(), -1.25, 1e-14);
}

GTEST_TEST(RiccatiTest, TerminalValueIsExact) {
  const RiccatiSpec spec{-2.0, 3.2, 1.25, 1.25};
  EXPECT_EQ(SolveRiccati(spec, 1.0).Evaluate(1.0), 1.25);
  EXPECT_EQ(SolveRiccati({0.7, 0.0, 2.0, 0.3}, 2.0).Evaluate(2.0), 0.3);
  EXPECT_EQ(SolveRiccati({0.0, 0.0, 2.0, 0.3}, 2.0).Evaluate(2.0), 0.3);
}

GTEST_TEST(RiccatiTest, HyperbolicTangentSolution) {
  // rho' = rho^2 - 1, rho(T) = 0 is solved by tanh(T - t).
  const double horizon = 2.5;
  const RiccatiEval eval = SolveRiccati({0.0, 1.0, 1.0, 0.0}, horizon);
  for (double t = 0.0; t <= horizon; t += 0.125) {
    EXPECT_NEAR(eval.Evaluate(t), std::tanh(horizon - t), 1e-14) << t;
  }
}

GTEST_TEST(RiccatiTest, StationaryTerminalValueStaysConstant) {
  // B D^2 + 2 A D - C = 0 at D = 1.
  const RiccatiEval eval = SolveRiccati({0.5, 2.0, 3.0, 1.0}, 3.0);
  EXPECT_NEAR(eval.Drift(), 0.0, 1e-15);
  for (double t = 0.0; t <= 3.0; t += 0.25) {
    EXPECT_NEAR(eval.Evaluate(t), 1.0, 1e-14);
  }
}

GTEST_TEST(RiccatiTest, LinearLimits) {
  const RiccatiEval lin = SolveRiccati({0.7, 0.0, 2.0, 0.3}, 2.0);
  EXPECT_EQ(lin.regime(), RiccatiRegime::kLinearA);
  for (double t = 0.0; t <= 2.0; t += 0.25) {
    const double tau = 2.0 - t;
    // rho' = 2 A rho - C backward from D.
    const double expected = 0.3 * std::exp(-1.4 * tau) +
                            2.0 / 1.4 * (1.0 - std::exp(-1.4 * tau));
    EXPECT_NEAR(lin.Evaluate(t), expected, 1e-14);
  }
  const RiccatiEval affine = SolveRiccati({0.0, 0.0, 2.0, 0.3}, 2.0);
  EXPECT_EQ(affine.regime(), RiccatiRegime::kLinear0);
  EXPECT_NEAR(affine.Evaluate(0.5), 0.3 + 2.0 * 1.5, 1e-14);
}

GTEST_TEST(RiccatiTest, FullRegimeApproachesLinearLimit) {
  const double horizon = 1.5;
  const RiccatiEval lin = SolveRiccati({-0.8, 0.0, 1.1, 0.4}, horizon);
  const RiccatiEval tiny = SolveRiccati({-0.8, 1e-9, 1.1, 0.4}, horizon);
  EXPECT_EQ(tiny.regime(), RiccatiRegime::kFull);
  EXPECT_NEAR(tiny.Evaluate(0.0), lin.Evaluate(0.0), 1e-7);
}

GTEST_TEST(RiccatiTest, SatisfiesOdeOnRandomSpecs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(0.1, 3.0);
  std::uniform_real_distribution<double> drift(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const RiccatiSpec s{drift(rng), coef(rng), coef(rng), coef(rng)};
    const double horizon = coef(rng);
    const RiccatiEval eval = SolveRiccati(s, horizon);
    for (int k = 0; k <= 20; ++k) {
      const double t = k == 20 ? horizon : horizon * k / 20.0;
      const double rho = eval.Evaluate(t);
      const double rhs = s.B * rho * rho + 2.0 * s.A * rho - s.C;
      EXPECT_NEAR(eval.Derivative(t), rhs, 1e-11 * (1.0 + std::abs(rhs)));
      // The sign of the derivative never changes.
      EXPECT_GE(eval.Derivative(t) * eval.Drift(), -1e-300);
    }
    // Central difference at an interior point.
    const double t = 0.5 * horizon;
    const double dt = 1e-5 * horizon;
    const double fd = (eval.Evaluate(t + dt) - eval.Evaluate(t - dt)) / (2 * dt);
    EXPECT_NEAR(eval.Derivative(t), fd, 1e-6 * (1.0 + std::abs(fd)));
  }
}

GTEST_TEST(RiccatiTest, LargeCoefficientsDoNotOverflow) {
  const RiccatiEval eval = SolveRiccati({-400.0, 5e4, 3.0, 2.0}, 50.0);
  for (double t : {0.0, 1.0, 25.0, 49.999, 50.0}) {
    EXPECT_TRUE(std::isfinite(eval.Evaluate(t))) << t;
    EXPECT_TRUE(std::isfinite(eval.Derivative(t))) << t;
  }
}

GTEST_TEST(RiccatiTest, IntegrateMatchesTangentAntiderivative) {
  // int_0^T tanh(T - t) dt = log cosh T.
  const RiccatiEval eval = SolveRiccati({0.0, 1.0, 1.0, 0.0}, 2.0);
  EXPECT_NEAR(eval.Integrate(0.0, 2.0, 2001), std::log(std::cosh(2.0)), 1e-12);
}

GTEST_TEST(RiccatiTest, Errors) {
  EXPECT_THROW(SolveRiccati({-1.0, 1.0, -1.0, 1.0}, 1.0), IllPosedError);
  EXPECT_THROW(SolveRiccati({-1.0, 1.0, 1.0, -1.0}, 1.0), IllPosedError);
  EXPECT_THROW(SolveRiccati({-1.0, 1.0, 1.0, 1.0}, 0.0), OutOfDomainError);
  const RiccatiEval eval = SolveRiccati({-1.0, 1.0, 1.0, 1.0}, 1.0);
  EXPECT_THROW(eval.Evaluate(-0.1), OutOfDomainError);
  EXPECT_THROW(eval.Evaluate(1.1), OutOfDomainError);
  EXPECT_EQ(RegimeName(RiccatiRegime::kFull), "FULL");
}

}  // namespace
}  // namespace mfgpoa
