#pragma once

#include <string>
#include <string_view>

#include "mfgpoa/model.h"
#include "mfgpoa/trajectories.h"

namespace mfgpoa {

// The four addends of a social cost.
struct CostBreakdown {
  double terminal_variance = 0.0;  // 1/2 (q_T + q_bar_T) v_T
  double terminal_mean = 0.0;      // 1/2 (q_T + q_bar_T (1 - s_T)^2) x_bar_T^2
  double running_variance = 0.0;   // 1/2 int [q + q_bar + (r + r_bar)(a eta)^2] v
  double running_mean = 0.0;  // 1/2 int [q + q_bar(1-s)^2 + (r + r_bar(1-s_bar)^2)(c eta_bar)^2] x_bar^2

  double total() const {
    return terminal_variance + terminal_mean + running_variance + running_mean;
  }
};

struct SocialCostResult {
  double cost = 0.0;
  CostBreakdown breakdown;
};

struct CostReport {
  double sc_mfg = 0.0;
  double sc_mkv = 0.0;
  double h_var = 0.0;         // variance-driven part shared by both costs
  double delta_direct = 0.0;  // sc_mfg - sc_mkv
  double delta_prop2 = 0.0;   // 1/2 B int ((u - w) x_bar^MFG)^2
  double poa = 0.0;           // 1 + delta_prop2 / sc_mkv
  CostBreakdown breakdown_mfg;
  CostBreakdown breakdown_mkv;
};

SocialCostResult SocialCostOf(const GameSolution& game, Kind kind);
SocialCostResult SocialCost(const ModelParams& params,
                            const DerivedCoefficients& derived, Kind kind,
                            const TimeGrid& grid);

// Planner cost through the integrated-by-parts form
//   h_var + 1/2 w_0 E(xi)^2
// with the running variance weight written as q + q_bar + B^eta eta^2.
double PlannerCostShortcut(const GameSolution& game);

// Cost gap as the non-negative integral 1/2 B int ((u - w) x_bar^MFG)^2 dt.
double DeltaScOf(const GameSolution& game);
double DeltaSc(const ModelParams& params, const DerivedCoefficients& derived,
               const TimeGrid& grid);

// Full report on one grid. Throws InvalidModelError for unsolvable
// parameters and DegenerateCostError if the planner cost is not positive.
CostReport PriceOfAnarchyOf(const GameSolution& game);
CostReport PriceOfAnarchy(const ModelParams& params, const TimeGrid& grid);

enum class EfficiencyReason {
  kMeanZero,       // E(xi) = 0: mean terms vanish for both problems
  kB1BarPositive,  // b1_bar > 0: equal terminal values, both curves stationary
  kB1BarZero,      // b1_bar = 0: D^u = D^w and C^u = C^w
  kNotEfficient,
};

std::string_view ReasonName(EfficiencyReason reason);

struct EfficiencyResiduals {
  double terminal_gap = 0.0;      // |D^u - D^w|
  double running_gap = 0.0;       // |C^u - C^w|
  double stationary_u = 0.0;      // |B (D^u)^2 + 2 A^u D^u - C^u|
  double stationary_w = 0.0;      // |B (D^w)^2 + 2 A^w D^w - C^w|
  double implied_constant = 0.0;  // s q_bar (1 - s) / b1_bar, NaN if b1_bar = 0
};

struct EfficiencyVerdict {
  bool poa_is_one = false;
  EfficiencyReason reason = EfficiencyReason::kNotEfficient;
  // The sufficient coupling conditions, checked pointwise on the grid.
  bool prop1_sufficient = false;
  EfficiencyResiduals residuals;
};

// Decides PoA = 1 algebraically from the Riccati coefficients. The grid is
// used only for prop1_sufficient. Throws InvalidModelError.
EfficiencyVerdict Efficiency(const ModelParams& params, const TimeGrid& grid);
EfficiencyVerdict Efficiency(const ModelParams& params);

std::string CostReportToJson(const CostReport& report);
// Inverse of CostReportToJson. Throws ParseError.
CostReport CostReportFromJson(std::string_view text);
std::string EfficiencyToJson(const EfficiencyVerdict& verdict);

}  // namespace mfgpoa
