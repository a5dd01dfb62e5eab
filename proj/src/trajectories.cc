#include "mfgpoa/trajectories.h"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "mfgpoa/errors.h"
#include "mfgpoa/quadrature.h"

namespace mfgpoa {

namespace {

void RequireSolvable(const ModelParams& params) {
  const ValidationReport report = Validate(params);
  if (report.solvable()) return;
  std::ostringstream msg;
  msg << "model fails validation:";
  for (const std::string& v : report.violations) msg << " [" << v << "]";
  throw InvalidModelError(msg.str());
}

Trajectory Sample(const RiccatiEval& eval, const TimeGrid& grid,
                  std::string label) {
  Trajectory out{grid, std::vector<double>(static_cast<size_t>(grid.size())),
                 std::move(label)};
  for (int k = 0; k < grid.size(); ++k) {
    out.values[static_cast<size_t>(k)] = eval.Evaluate(grid.point(k));
  }
  return out;
}

RiccatiEval SolveChecked(const RiccatiSpec& spec, double horizon,
                         const char* name) {
  try {
    return SolveRiccati(spec, horizon);
  } catch (const IllPosedError& e) {
    throw InvalidModelError(std::string(name) + ": " + e.what());
  }
}

// Mean state from an already sampled u or w curve.
Trajectory MeanFromWeighted(const ModelParams& p, double big_b,
                            const Trajectory& rho, Kind kind) {
  const TimeGrid& grid = rho.grid;
  std::vector<double> rate(rho.values.size());
  for (size_t k = 0; k < rate.size(); ++k) {
    rate[k] = p.b1 + p.b1_bar - big_b * rho.values[k];
  }
  const std::vector<double> exponent = CumulativeSimpson(rate, grid.step());
  Trajectory out{grid, std::vector<double>(rate.size()),
                 kind == Kind::kMfg ? "x_bar_mfg" : "x_bar_mkv"};
  for (size_t k = 0; k < rate.size(); ++k) {
    out.values[k] = p.xi_mean * std::exp(exponent[k]);
  }
  out.values.front() = p.xi_mean;
  return out;
}

// Gauss-Legendre rule on [-1, 1].
constexpr double kGaussNodes[4] = {-0.8611363115940526, -0.3399810435848563,
                                   0.3399810435848563, 0.8611363115940526};
constexpr double kGaussWeights[4] = {0.3478548451374538, 0.6521451548625461,
                                     0.6521451548625461, 0.3478548451374538};

template <typename F>
double Gauss(const F& f, double t0, double t1) {
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += kGaussWeights[i] * f(mid + half * kGaussNodes[i]);
  return half * sum;
}

// v = E(t) [xi_var + sigma^2 int_0^t 1/E(s) ds] with log E = int 2(b1 - B eta).
// Each step carries J_k = int_0^{t_k} E(t_k)/E(s) ds forward with Gauss rules
// on the closed-form eta, so every increment is positive.
Trajectory VarianceFromEta(const ModelParams& p, double b_eta,
                           const RiccatiEval& eta, const TimeGrid& grid) {
  const size_t n = static_cast<size_t>(grid.size());
  auto rate = [&](double t) { return 2.0 * (p.b1 - b_eta * eta.Evaluate(t)); };
  std::vector<double> g(n, 0.0);
  std::vector<double> j(n, 0.0);
  for (size_t k = 0; k + 1 < n; ++k) {
    const double t0 = grid.point(static_cast<int>(k));
    const double t1 = grid.point(static_cast<int>(k + 1));
    const double step = Gauss(rate, t0, t1);
    const double inflow = Gauss(
        [&](double s) { return std::exp(Gauss(rate, s, t1)); }, t0, t1);
    g[k + 1] = g[k] + step;
    j[k + 1] = std::exp(step) * j[k] + inflow;
  }
  Trajectory out{grid, std::vector<double>(n), "v"};
  const double sigma2 = p.sigma * p.sigma;
  for (size_t k = 0; k < n; ++k) {
    out.values[k] = p.xi_var * std::exp(g[k]) + sigma2 * j[k];
  }
  out.values.front() = p.xi_var;
  return out;
}

Trajectory ScaledCopy(const Trajectory& src, double factor, std::string label) {
  Trajectory out{src.grid, src.values, std::move(label)};
  for (double& v : out.values) v *= factor;
  return out;
}

}  // namespace

TimeGrid::TimeGrid(double horizon, int n) : horizon_(horizon), n_(n) {
  if (n < 3 || n % 2 == 0) {
    throw BadGridError("time grid needs an odd point count >= 3, got " +
                       std::to_string(n));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw BadGridError("time grid needs a positive horizon");
  }
}

void WriteTrajectoryCsv(const Trajectory& trajectory, std::ostream& out) {
  out << "t," << trajectory.label << "\n";
  char buf[64];
  for (int k = 0; k < trajectory.grid.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", trajectory.grid.point(k),
                  trajectory.values[static_cast<size_t>(k)]);
    out << buf << "\n";
  }
}

std::string_view KindName(Kind kind) {
  return kind == Kind::kMfg ? "MFG" : "MKV";
}

RiccatiSolutions SolveModelRiccati(const ModelParams& params,
                                   const DerivedCoefficients& derived) {
  RequireSolvable(params);
  return {SolveChecked(derived.riccati_u, params.T, "u"),
          SolveChecked(derived.riccati_w, params.T, "w"),
          SolveChecked(derived.riccati_eta, params.T, "eta")};
}

Trajectory EtaCurve(const ModelParams& params,
                    const DerivedCoefficients& derived, const TimeGrid& grid) {
  RequireSolvable(params);
  return Sample(SolveChecked(derived.riccati_eta, params.T, "eta"), grid,
                "eta");
}

Trajectory WeightedMeanCurve(const ModelParams& params,
                             const DerivedCoefficients& derived, Kind kind,
                             const TimeGrid& grid) {
  RequireSolvable(params);
  if (kind == Kind::kMfg) {
    return Sample(SolveChecked(derived.riccati_u, params.T, "u"), grid, "u");
  }
  return Sample(SolveChecked(derived.riccati_w, params.T, "w"), grid, "w");
}

Trajectory EtaBarCurve(const ModelParams& params,
                       const DerivedCoefficients& derived, Kind kind,
                       const TimeGrid& grid) {
  const Trajectory rho = WeightedMeanCurve(params, derived, kind, grid);
  if (kind == Kind::kMkv) return ScaledCopy(rho, 1.0, "eta_bar_mkv");
  return ScaledCopy(rho, 1.0 / derived.lambda, "eta_bar_mfg");
}

Trajectory MeanState(const ModelParams& params,
                     const DerivedCoefficients& derived, Kind kind,
                     const TimeGrid& grid) {
  const Trajectory rho = WeightedMeanCurve(params, derived, kind, grid);
  return MeanFromWeighted(params, derived.riccati_u.B, rho, kind);
}

Trajectory Variance(const ModelParams& params,
                    const DerivedCoefficients& derived, const TimeGrid& grid) {
  RequireSolvable(params);
  const RiccatiSolutions sol = SolveModelRiccati(params, derived);
  return VarianceFromEta(params, derived.riccati_eta.B, sol.eta, grid);
}

Trajectory ControlMean(const ModelParams& params,
                       const DerivedCoefficients& derived, Kind kind,
                       const TimeGrid& grid) {
  return ControlMeanOf(SolveGame(params, derived, grid), kind);
}

FeedbackPolicy Policy(const ModelParams& params,
                      const DerivedCoefficients& derived, Kind kind,
                      const TimeGrid& grid) {
  return PolicyOf(SolveGame(params, derived, grid), kind);
}

GameSolution SolveGame(const ModelParams& params, const TimeGrid& grid) {
  RequireSolvable(params);
  return SolveGame(params, Derive(params), grid);
}

GameSolution SolveGame(const ModelParams& params,
                       const DerivedCoefficients& derived,
                       const TimeGrid& grid) {
  RequireSolvable(params);
  if (grid.horizon() != params.T) {
    throw BadGridError("grid horizon differs from model horizon");
  }
  const RiccatiSolutions sol = SolveModelRiccati(params, derived);
  Trajectory eta = Sample(sol.eta, grid, "eta");
  Trajectory u = Sample(sol.u, grid, "u");
  Trajectory w = Sample(sol.w, grid, "w");
  Trajectory variance = VarianceFromEta(params, derived.riccati_eta.B, sol.eta, grid);
  Trajectory mean_mfg =
      MeanFromWeighted(params, derived.riccati_u.B, u, Kind::kMfg);
  Trajectory mean_mkv =
      MeanFromWeighted(params, derived.riccati_w.B, w, Kind::kMkv);
  Trajectory eta_bar_mfg = ScaledCopy(u, 1.0 / derived.lambda, "eta_bar_mfg");
  Trajectory eta_bar_mkv = ScaledCopy(w, 1.0, "eta_bar_mkv");
  return GameSolution{params,
                      derived,
                      grid,
                      std::move(eta),
                      std::move(variance),
                      std::move(u),
                      std::move(w),
                      std::move(eta_bar_mfg),
                      std::move(eta_bar_mkv),
                      std::move(mean_mfg),
                      std::move(mean_mkv)};
}

FeedbackPolicy PolicyOf(const GameSolution& game, Kind kind) {
  const double a = game.derived.a;
  const double b = game.b(kind);
  const auto& eta = game.eta.values;
  const auto& eta_bar = game.eta_bar(kind).values;
  const auto& mean = game.mean_state(kind).values;
  const std::string suffix = kind == Kind::kMfg ? "_mfg" : "_mkv";
  FeedbackPolicy policy{kind,
                        {game.grid, std::vector<double>(eta.size()),
                         "slope" + suffix},
                        {game.grid, std::vector<double>(eta.size()),
                         "intercept" + suffix}};
  for (size_t k = 0; k < eta.size(); ++k) {
    policy.slope.values[k] = a * eta[k];
    policy.intercept.values[k] =
        (a * (eta_bar[k] - eta[k]) + b * eta_bar[k]) * mean[k];
  }
  return policy;
}

Trajectory ControlMeanOf(const GameSolution& game, Kind kind) {
  const double c = game.c(kind);
  const auto& eta_bar = game.eta_bar(kind).values;
  const auto& mean = game.mean_state(kind).values;
  Trajectory out{game.grid, std::vector<double>(mean.size()),
                 kind == Kind::kMfg ? "nu_bar_mfg" : "nu_bar_mkv"};
  for (size_t k = 0; k < mean.size(); ++k) {
    out.values[k] = c * eta_bar[k] * mean[k];
  }
  return out;
}

}  // namespace mfgpoa
