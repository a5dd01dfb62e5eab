#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "mfgpoa/riccati.h"

namespace mfgpoa {

// Scalar coefficients of the linear-quadratic extended mean field game:
//
//   drift    b1 x + b1_bar mean(mu) + b2 alpha + b2_bar mean(nu)
//   running  1/2 [q x^2 + q_bar (x - s mean(mu))^2
//                 + r alpha^2 + r_bar (alpha - s_bar mean(nu))^2]
//   terminal 1/2 [q_T x^2 + q_bar_T (x - s_T mean(mu))^2]
//
// plus the volatility, the first two moments of the initial law and the
// horizon.
struct ModelParams {
  double b1 = 0.0;
  double b1_bar = 0.0;
  double b2 = 0.0;
  double b2_bar = 0.0;
  double sigma = 0.0;
  double q = 0.0;
  double q_bar = 0.0;
  double s = 0.0;
  double r = 0.0;
  double r_bar = 0.0;
  double s_bar = 0.0;
  double q_T = 0.0;
  double q_bar_T = 0.0;
  double s_T = 0.0;
  double xi_mean = 0.0;
  double xi_var = 0.0;
  double T = 0.0;

  // Full-interaction reference model: every coefficient 1, interaction
  // scalings 0.5, deterministic unit initial condition, unit horizon.
  static ModelParams Defaults();

  bool operator==(const ModelParams&) const = default;
};

// Field names in serialization order.
inline constexpr std::array<std::string_view, 17> kParameterNames = {
    "b1",  "b1_bar", "b2",  "b2_bar",  "sigma", "q",       "q_bar",   "s", "r",
    "r_bar", "s_bar", "q_T", "q_bar_T", "s_T",   "xi_mean", "xi_var", "T"};

// Named access to a field. Throws UnknownParameterError for unknown names.
double GetParameter(const ModelParams& params, std::string_view name);
void SetParameter(ModelParams& params, std::string_view name, double value);
bool IsParameterName(std::string_view name);

struct ValidationCheck {
  std::string name;  // the inequality, e.g. "q + q_bar > 0"
  bool passed = false;
};

struct ValidationReport {
  // Finiteness, T > 0, sigma >= 0, xi_var >= 0, non-negative coefficients.
  bool domain_ok = false;
  // Every existence/uniqueness inequality holds.
  bool theorem1_ok = false;
  // theorem1_ok plus b1 > 0, D^u, D^w, D^eta > 0 and E(xi) != 0.
  bool assumption1_ok = false;
  std::vector<ValidationCheck> domain_checks;
  std::vector<ValidationCheck> theorem1_checks;
  std::vector<ValidationCheck> assumption1_checks;
  // Names of every failed check, in the order above.
  std::vector<std::string> violations;

  // Solvers require both.
  bool solvable() const { return domain_ok && theorem1_ok; }
};

// Never throws.
ValidationReport Validate(const ModelParams& params);

// Closed-form scalars shared by the equilibrium and planner problems.
struct DerivedCoefficients {
  double lambda = 0.0;  // c_mfg / c_mkv
  double a = 0.0;       // common feedback gain on Y
  double b_mfg = 0.0;
  double c_mfg = 0.0;
  double b_mkv = 0.0;
  double c_mkv = 0.0;
  RiccatiSpec riccati_u;    // u = lambda * eta_bar^MFG
  RiccatiSpec riccati_w;    // w = eta_bar^MKV
  RiccatiSpec riccati_eta;  // eta, shared by both problems
};

// Throws ZeroDenominatorError naming the vanishing denominator, one of
// "r + r_bar", "r + r_bar(1 - s_bar)", "r + r_bar(1 - s_bar)^2" or
// "b2 + b2_bar".
DerivedCoefficients Derive(const ModelParams& params);

// JSON model files carry exactly the keys of kParameterNames. Throws
// ParseError naming the first missing or unexpected key.
ModelParams ParseModelJson(std::string_view text);
ModelParams LoadModelFile(const std::string& path);
std::string ModelToJson(const ModelParams& params);

}  // namespace mfgpoa
