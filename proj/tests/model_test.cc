#include "mfgpoa/model.h"

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "mfgpoa/errors.h"

namespace mfgpoa {
namespace {

constexpr double kTol = 1e-14;

bool HasViolation(const ValidationReport& report, const std::string& name) {
  for (const std::string& v : report.violations) {
    if (v == name) return true;
  }
  return false;
}

GTEST_TEST(ModelParamsTest, DefaultsMatchReferenceModel) {
  const ModelParams p = ModelParams::Defaults();
  for (std::string_view name : kParameterNames) {
    const double v = GetParameter(p, name);
    if (name == "s" || name == "s_bar" || name == "s_T") {
      EXPECT_EQ(v, 0.5) << name;
    } else if (name == "xi_var") {
      EXPECT_EQ(v, 0.0) << name;
    } else {
      EXPECT_EQ(v, 1.0) << name;
    }
  }
}

GTEST_TEST(ModelParamsTest, NamedAccessRoundTrips) {
  ModelParams p = ModelParams::Defaults();
  double value = 2.0;
  for (std::string_view name : kParameterNames) {
    SetParameter(p, name, value);
    EXPECT_EQ(GetParameter(p, name), value);
    value += 1.0;
  }
  EXPECT_TRUE(IsParameterName("q_bar_T"));
  EXPECT_FALSE(IsParameterName("gamma"));
  EXPECT_THROW(GetParameter(p, "gamma"), UnknownParameterError);
  EXPECT_THROW(SetParameter(p, "gamma", 1.0), UnknownParameterError);
}

GTEST_TEST(DeriveTest, DefaultCoefficients) {
  const DerivedCoefficients d = Derive(ModelParams::Defaults());
  EXPECT_NEAR(d.lambda, 5.0 / 12.0, kTol);
  EXPECT_NEAR(d.a, -0.5, kTol);
  EXPECT_NEAR(d.c_mkv, -1.6, kTol);
  // c_mfg = -b2 / (r + r_bar(1 - s_bar)) = -2/3.
  EXPECT_NEAR(d.c_mfg, -2.0 / 3.0, kTol);

  EXPECT_NEAR(d.riccati_u.A, -1.5, kTol);
  EXPECT_NEAR(d.riccati_u.B, 3.2, kTol);
  EXPECT_NEAR(d.riccati_u.C, 0.625, kTol);
  EXPECT_NEAR(d.riccati_u.D, 0.625, kTol);
  EXPECT_NEAR(d.riccati_w.A, -2.0, kTol);
  EXPECT_NEAR(d.riccati_w.B, 3.2, kTol);
  EXPECT_NEAR(d.riccati_w.C, 1.25, kTol);
  EXPECT_NEAR(d.riccati_w.D, 1.25, kTol);
  EXPECT_NEAR(d.riccati_eta.A, -1.0, kTol);
  EXPECT_NEAR(d.riccati_eta.B, 0.5, kTol);
  EXPECT_NEAR(d.riccati_eta.C, 2.0, kTol);
  EXPECT_NEAR(d.riccati_eta.D, 2.0, kTol);
}

GTEST_TEST(DeriveTest, LambdaIsGainRatio) {
  ModelParams p = ModelParams::Defaults();
  p.b2 = 1.7;
  p.b2_bar = 0.3;
  p.r = 0.6;
  p.r_bar = 2.2;
  p.s_bar = 0.35;
  const DerivedCoefficients d = Derive(p);
  EXPECT_NEAR(d.lambda, d.c_mfg / d.c_mkv, 1e-14);
  // The equilibrium and planner gain differences coincide.
  EXPECT_NEAR(d.c_mfg - d.c_mkv, d.b_mfg - d.b_mkv, 1e-14);
}

GTEST_TEST(DeriveTest, UnitLambdaWithoutControlInteraction) {
  ModelParams p = ModelParams::Defaults();
  p.b2_bar = 0.0;
  p.r_bar = 0.0;
  EXPECT_NEAR(Derive(p).lambda, 1.0, 1e-15);
}

GTEST_TEST(DeriveTest, ZeroDenominatorsAreNamed) {
  ModelParams p = ModelParams::Defaults();
  p.r = 0.0;
  p.r_bar = 0.0;
  try {
    Derive(p);
    FAIL() << "expected ZeroDenominatorError";
  } catch (const ZeroDenominatorError& e) {
    EXPECT_EQ(e.name(), "r + r_bar");
  }
  p = ModelParams::Defaults();
  p.r = 0.0;
  p.s_bar = 1.0;
  try {
    Derive(p);
    FAIL() << "expected ZeroDenominatorError";
  } catch (const ZeroDenominatorError& e) {
    EXPECT_EQ(e.name(), "r + r_bar(1 - s_bar)");
  }
}

GTEST_TEST(ValidateTest, DefaultsSatisfyEverything) {
  const ValidationReport report = Validate(ModelParams::Defaults());
  EXPECT_TRUE(report.domain_ok);
  EXPECT_TRUE(report.theorem1_ok);
  EXPECT_TRUE(report.assumption1_ok);
  EXPECT_TRUE(report.violations.empty());
  EXPECT_TRUE(report.solvable());
}

GTEST_TEST(ValidateTest, ReportsEachViolation) {
  ModelParams p = ModelParams::Defaults();
  p.r = 0.0;
  p.r_bar = 0.0;
  ValidationReport report = Validate(p);
  EXPECT_FALSE(report.theorem1_ok);
  EXPECT_FALSE(report.assumption1_ok);
  EXPECT_TRUE(HasViolation(report, "r + r_bar > 0"));

  p = ModelParams::Defaults();
  p.xi_mean = 0.0;
  report = Validate(p);
  EXPECT_TRUE(report.theorem1_ok);
  EXPECT_FALSE(report.assumption1_ok);
  EXPECT_TRUE(HasViolation(report, "E(xi) != 0"));

  p = ModelParams::Defaults();
  p.T = 0.0;
  report = Validate(p);
  EXPECT_FALSE(report.domain_ok);
  EXPECT_FALSE(report.solvable());
  EXPECT_TRUE(HasViolation(report, "T > 0"));

  p = ModelParams::Defaults();
  p.q = NAN;
  EXPECT_TRUE(HasViolation(Validate(p), "all parameters finite"));
}

GTEST_TEST(ValidateTest, ZeroVolatilityIsAdmissible) {
  ModelParams p = ModelParams::Defaults();
  p.sigma = 0.0;
  EXPECT_TRUE(Validate(p).assumption1_ok);
}

GTEST_TEST(ModelJsonTest, RoundTrip) {
  ModelParams p = ModelParams::Defaults();
  p.q_bar_T = 0.123456789012345678;
  p.sigma = 1.0 / 3.0;
  EXPECT_EQ(ParseModelJson(ModelToJson(p)), p);
}

GTEST_TEST(ModelJsonTest, MissingKeyIsNamed) {
  std::string text = ModelToJson(ModelParams::Defaults());
  const size_t at = text.find("\"sigma\"");
  ASSERT_NE(at, std::string::npos);
  const size_t end = text.find(',', at);
  text.erase(at, end - at + 1);
  try {
    ParseModelJson(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("sigma"), std::string::npos);
  }
}

GTEST_TEST(ModelJsonTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseModelJson("{"), ParseError);
  EXPECT_THROW(ParseModelJson("[1, 2]"), ParseError);
  std::string text = ModelToJson(ModelParams::Defaults());
  text.insert(1, "\"gamma\": 1, ");
  EXPECT_THROW(ParseModelJson(text), ParseError);
  text = ModelToJson(ModelParams::Defaults());
  const size_t at = text.find("\"q\":");
  text.replace(text.find(':', at) + 1, 4, " \"x\"");
  EXPECT_THROW(ParseModelJson(text), ParseError);
  EXPECT_THROW(LoadModelFile("/nonexistent/model.json"), ParseError);
}

}  // namespace
}  // namespace mfgpoa
