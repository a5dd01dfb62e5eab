#include "mfgpoa/social_cost.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

#include "mfgpoa/errors.h"
#include "mfgpoa/quadrature.h"

namespace mfgpoa {

namespace {

constexpr double kAlgebraicTol = 1e-12;
constexpr double kGridTol = 1e-9;

double Scale(std::initializer_list<double> values) {
  double m = 1.0;
  for (const double v : values) m = std::max(m, std::abs(v));
  return m;
}

nlohmann::ordered_json BreakdownJson(const CostBreakdown& b) {
  nlohmann::ordered_json j;
  j["terminal_variance"] = b.terminal_variance;
  j["terminal_mean"] = b.terminal_mean;
  j["running_variance"] = b.running_variance;
  j["running_mean"] = b.running_mean;
  return j;
}

CostBreakdown BreakdownFromJson(const nlohmann::json& j) {
  CostBreakdown b;
  b.terminal_variance = j.at("terminal_variance").get<double>();
  b.terminal_mean = j.at("terminal_mean").get<double>();
  b.running_variance = j.at("running_variance").get<double>();
  b.running_mean = j.at("running_mean").get<double>();
  return b;
}

}  // namespace

SocialCostResult SocialCostOf(const GameSolution& game, Kind kind) {
  const ModelParams& p = game.params;
  const DerivedCoefficients& d = game.derived;
  const double h = game.grid.step();
  const auto& v = game.variance.values;
  const auto& eta = game.eta.values;
  const auto& eta_bar = game.eta_bar(kind).values;
  const auto& mean = game.mean_state(kind).values;
  const double c = game.c(kind);

  const double one_s = 1.0 - p.s;
  const double one_sb = 1.0 - p.s_bar;
  const double one_sT = 1.0 - p.s_T;
  const double state_var_weight = p.q + p.q_bar;
  const double state_mean_weight = p.q + p.q_bar * one_s * one_s;
  const double control_var_weight = p.r + p.r_bar;
  const double control_mean_weight = p.r + p.r_bar * one_sb * one_sb;

  std::vector<double> var_integrand(v.size());
  std::vector<double> mean_integrand(v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    const double slope = d.a * eta[k];
    const double control_mean_gain = c * eta_bar[k];
    var_integrand[k] =
        (state_var_weight + control_var_weight * slope * slope) * v[k];
    mean_integrand[k] = (state_mean_weight + control_mean_weight *
                                                 control_mean_gain *
                                                 control_mean_gain) *
                        mean[k] * mean[k];
  }

  SocialCostResult out;
  CostBreakdown& b = out.breakdown;
  b.terminal_variance = 0.5 * (p.q_T + p.q_bar_T) * v.back();
  b.terminal_mean =
      0.5 * (p.q_T + p.q_bar_T * one_sT * one_sT) * mean.back() * mean.back();
  b.running_variance = 0.5 * Simpson(var_integrand, h);
  b.running_mean = 0.5 * Simpson(mean_integrand, h);
  out.cost = b.total();
  return out;
}

SocialCostResult SocialCost(const ModelParams& params,
                            const DerivedCoefficients& derived, Kind kind,
                            const TimeGrid& grid) {
  return SocialCostOf(SolveGame(params, derived, grid), kind);
}

double PlannerCostShortcut(const GameSolution& game) {
  const ModelParams& p = game.params;
  const double b_eta = game.derived.riccati_eta.B;
  const auto& v = game.variance.values;
  const auto& eta = game.eta.values;
  std::vector<double> integrand(v.size());
  for (size_t k = 0; k < v.size(); ++k) {
    integrand[k] = (p.q + p.q_bar + b_eta * eta[k] * eta[k]) * v[k];
  }
  return 0.5 * Simpson(integrand, game.grid.step()) +
         0.5 * (p.q_T + p.q_bar_T) * v.back() +
         0.5 * game.w.front() * p.xi_mean * p.xi_mean;
}

double DeltaScOf(const GameSolution& game) {
  const auto& u = game.u.values;
  const auto& w = game.w.values;
  const auto& mean = game.mean_mfg.values;
  std::vector<double> integrand(u.size());
  for (size_t k = 0; k < u.size(); ++k) {
    const double gap = (u[k] - w[k]) * mean[k];
    integrand[k] = gap * gap;
  }
  return 0.5 * game.derived.riccati_u.B * Simpson(integrand, game.grid.step());
}

double DeltaSc(const ModelParams& params, const DerivedCoefficients& derived,
               const TimeGrid& grid) {
  return DeltaScOf(SolveGame(params, derived, grid));
}

CostReport PriceOfAnarchyOf(const GameSolution& game) {
  CostReport report;
  const SocialCostResult mfg = SocialCostOf(game, Kind::kMfg);
  const SocialCostResult mkv = SocialCostOf(game, Kind::kMkv);
  report.sc_mfg = mfg.cost;
  report.sc_mkv = mkv.cost;
  report.breakdown_mfg = mfg.breakdown;
  report.breakdown_mkv = mkv.breakdown;
  report.h_var = mkv.breakdown.terminal_variance + mkv.breakdown.running_variance;
  report.delta_direct = report.sc_mfg - report.sc_mkv;
  report.delta_prop2 = DeltaScOf(game);
  if (!(report.sc_mkv > 0.0)) {
    throw DegenerateCostError("planner social cost is not positive: " +
                              std::to_string(report.sc_mkv));
  }
  report.poa = 1.0 + report.delta_prop2 / report.sc_mkv;
  return report;
}

CostReport PriceOfAnarchy(const ModelParams& params, const TimeGrid& grid) {
  return PriceOfAnarchyOf(SolveGame(params, grid));
}

std::string_view ReasonName(EfficiencyReason reason) {
  switch (reason) {
    case EfficiencyReason::kMeanZero:
      return "MEAN_ZERO";
    case EfficiencyReason::kB1BarPositive:
      return "THM2_B1BAR_POS";
    case EfficiencyReason::kB1BarZero:
      return "THM2_B1BAR_ZERO";
    case EfficiencyReason::kNotEfficient:
      return "NOT_EFFICIENT";
  }
  return "?";
}

EfficiencyVerdict Efficiency(const ModelParams& params, const TimeGrid& grid) {
  const GameSolution game = SolveGame(params, grid);
  const DerivedCoefficients& d = game.derived;
  const RiccatiSpec& u = d.riccati_u;
  const RiccatiSpec& w = d.riccati_w;

  EfficiencyVerdict verdict;
  EfficiencyResiduals& res = verdict.residuals;
  res.terminal_gap = std::abs(u.D - w.D);
  res.running_gap = std::abs(u.C - w.C);
  res.stationary_u = std::abs(u.B * u.D * u.D + 2.0 * u.A * u.D - u.C);
  res.stationary_w = std::abs(w.B * w.D * w.D + 2.0 * w.A * w.D - w.C);
  res.implied_constant =
      params.b1_bar > 0.0
          ? params.s * params.q_bar * (1.0 - params.s) / params.b1_bar
          : std::numeric_limits<double>::quiet_NaN();

  const bool equal_terminal =
      res.terminal_gap <= kAlgebraicTol * Scale({u.D, w.D});
  const bool equal_running =
      res.running_gap <= kAlgebraicTol * Scale({u.C, w.C});
  const bool stationary_u =
      res.stationary_u <=
      kAlgebraicTol * Scale({u.C, u.D, u.B * u.D * u.D, 2.0 * u.A * u.D});
  const bool stationary_w =
      res.stationary_w <=
      kAlgebraicTol * Scale({w.C, w.D, w.B * w.D * w.D, 2.0 * w.A * w.D});

  if (params.xi_mean == 0.0) {
    verdict.poa_is_one = true;
    verdict.reason = EfficiencyReason::kMeanZero;
  } else if (params.b1_bar > 0.0) {
    verdict.poa_is_one = equal_terminal && stationary_u && stationary_w;
    verdict.reason = verdict.poa_is_one ? EfficiencyReason::kB1BarPositive
                                        : EfficiencyReason::kNotEfficient;
  } else {
    verdict.poa_is_one = equal_terminal && equal_running;
    verdict.reason = verdict.poa_is_one ? EfficiencyReason::kB1BarZero
                                        : EfficiencyReason::kNotEfficient;
  }

  // Pointwise coupling conditions against the planner mean flow.
  const auto& w_curve = game.w.values;
  const auto& x_mkv = game.mean_mkv.values;
  const double running_coupling = params.s * params.q_bar * (params.s - 1.0);
  const double gain_gap = d.c_mfg - d.c_mkv;
  bool sufficient = true;
  for (size_t k = 0; k < x_mkv.size() && sufficient; ++k) {
    const double tol = kGridTol * (1.0 + std::abs(x_mkv[k]));
    const double cond1 =
        (params.b1_bar * w_curve[k] + running_coupling) * x_mkv[k];
    const double cond2 = gain_gap * w_curve[k] * x_mkv[k];
    sufficient = std::abs(cond1) <= tol && std::abs(cond2) <= tol;
  }
  const double cond3 =
      params.s_T * params.q_bar_T * (params.s_T - 1.0) * x_mkv.back();
  sufficient =
      sufficient && std::abs(cond3) <= kGridTol * (1.0 + std::abs(x_mkv.back()));
  verdict.prop1_sufficient = sufficient;
  return verdict;
}

EfficiencyVerdict Efficiency(const ModelParams& params) {
  return Efficiency(params, TimeGrid(params.T, TimeGrid::kDefaultPoints));
}

std::string CostReportToJson(const CostReport& report) {
  nlohmann::ordered_json j;
  j["sc_mfg"] = report.sc_mfg;
  j["sc_mkv"] = report.sc_mkv;
  j["h_var"] = report.h_var;
  j["delta_direct"] = report.delta_direct;
  j["delta_prop2"] = report.delta_prop2;
  j["poa"] = report.poa;
  j["breakdown_mfg"] = BreakdownJson(report.breakdown_mfg);
  j["breakdown_mkv"] = BreakdownJson(report.breakdown_mkv);
  return j.dump(2);
}

CostReport CostReportFromJson(std::string_view text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    CostReport r;
    r.sc_mfg = j.at("sc_mfg").get<double>();
    r.sc_mkv = j.at("sc_mkv").get<double>();
    r.h_var = j.at("h_var").get<double>();
    r.delta_direct = j.at("delta_direct").get<double>();
    r.delta_prop2 = j.at("delta_prop2").get<double>();
    r.poa = j.at("poa").get<double>();
    r.breakdown_mfg = BreakdownFromJson(j.at("breakdown_mfg"));
    r.breakdown_mkv = BreakdownFromJson(j.at("breakdown_mkv"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed cost report: ") + e.what());
  }
}

std::string EfficiencyToJson(const EfficiencyVerdict& verdict) {
  nlohmann::ordered_json j;
  j["poa_is_one"] = verdict.poa_is_one;
  j["reason"] = std::string(ReasonName(verdict.reason));
  j["prop1_sufficient"] = verdict.prop1_sufficient;
  nlohmann::ordered_json r;
  r["terminal_gap"] = verdict.residuals.terminal_gap;
  r["running_gap"] = verdict.residuals.running_gap;
  r["stationary_u"] = verdict.residuals.stationary_u;
  r["stationary_w"] = verdict.residuals.stationary_w;
  if (std::isnan(verdict.residuals.implied_constant)) {
    r["implied_constant"] = nullptr;
  } else {
    r["implied_constant"] = verdict.residuals.implied_constant;
  }
  j["residuals"] = r;
  return j.dump(2);
}

}  // namespace mfgpoa
