#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mfgpoa/model.h"
#include "mfgpoa/riccati.h"

namespace mfgpoa {

// Uniform grid t_k = k T / (n - 1), k = 0..n-1, with n odd and >= 3.
class TimeGrid {
 public:
  static constexpr int kDefaultPoints = 2001;

  // Throws BadGridError for even n, n < 3 or non-positive T.
  TimeGrid(double horizon, int n);

  double horizon() const { return horizon_; }
  int size() const { return n_; }
  double step() const { return horizon_ / (n_ - 1); }
  // t_k, with t_{n-1} == T exactly.
  double point(int k) const {
    return k == n_ - 1 ? horizon_ : k * horizon_ / (n_ - 1);
  }

  bool operator==(const TimeGrid&) const = default;

 private:
  double horizon_;
  int n_;
};

// Samples of a scalar function of time on a TimeGrid.
struct Trajectory {
  TimeGrid grid;
  std::vector<double> values;
  std::string label;

  double front() const { return values.front(); }
  double back() const { return values.back(); }
};

// CSV with header "t,<label>" and 17 significant digits per value.
void WriteTrajectoryCsv(const Trajectory& trajectory, std::ostream& out);

enum class Kind { kMfg, kMkv };

std::string_view KindName(Kind kind);

// Affine feedback phi(t, x) = slope(t) x + intercept(t) on the grid.
struct FeedbackPolicy {
  Kind kind = Kind::kMfg;
  Trajectory slope;      // a eta_t
  Trajectory intercept;  // [a (eta_bar_t - eta_t) + b eta_bar_t] x_bar_t

  double operator()(int k, double x) const {
    return slope.values[static_cast<size_t>(k)] * x +
           intercept.values[static_cast<size_t>(k)];
  }
};

// Closed-form evaluators for u, w and eta. Throws InvalidModelError when the
// parameters fail domain or existence checks.
struct RiccatiSolutions {
  RiccatiEval u;
  RiccatiEval w;
  RiccatiEval eta;
};
RiccatiSolutions SolveModelRiccati(const ModelParams& params,
                                   const DerivedCoefficients& derived);

// eta_t, common to the equilibrium and the planner problem.
Trajectory EtaCurve(const ModelParams& params,
                    const DerivedCoefficients& derived, const TimeGrid& grid);

// u_t = lambda eta_bar^MFG_t (kMfg) or w_t = eta_bar^MKV_t (kMkv).
Trajectory WeightedMeanCurve(const ModelParams& params,
                             const DerivedCoefficients& derived, Kind kind,
                             const TimeGrid& grid);

// eta_bar_t of the requested problem: u_t / lambda or w_t.
Trajectory EtaBarCurve(const ModelParams& params,
                       const DerivedCoefficients& derived, Kind kind,
                       const TimeGrid& grid);

// x_bar_t = E(xi) exp(int_0^t (b1 + b1_bar - B rho_s) ds) with rho = u or w.
Trajectory MeanState(const ModelParams& params,
                     const DerivedCoefficients& derived, Kind kind,
                     const TimeGrid& grid);

// v_t = E(t) [Var(xi) + sigma^2 int_0^t 1/E(s) ds] with
// E(t) = exp(2 int_0^t (b1 - B^eta eta_s) ds). The integral of 1/E is carried
// step by step as E(t_k) int_0^{t_k} 1/E, with Gauss rules on the closed-form
// eta, so 1/E is never formed and every increment is positive.
Trajectory Variance(const ModelParams& params,
                    const DerivedCoefficients& derived, const TimeGrid& grid);

// E phi(t, X_t) = c eta_bar_t x_bar_t for the requested problem.
Trajectory ControlMean(const ModelParams& params,
                       const DerivedCoefficients& derived, Kind kind,
                       const TimeGrid& grid);

FeedbackPolicy Policy(const ModelParams& params,
                      const DerivedCoefficients& derived, Kind kind,
                      const TimeGrid& grid);

// Every curve of a solved game on one grid; eta and v are built once and
// shared by both problems.
struct GameSolution {
  ModelParams params;
  DerivedCoefficients derived;
  TimeGrid grid;
  Trajectory eta;
  Trajectory variance;
  Trajectory u;
  Trajectory w;
  Trajectory eta_bar_mfg;
  Trajectory eta_bar_mkv;
  Trajectory mean_mfg;
  Trajectory mean_mkv;

  const Trajectory& eta_bar(Kind kind) const {
    return kind == Kind::kMfg ? eta_bar_mfg : eta_bar_mkv;
  }
  const Trajectory& mean_state(Kind kind) const {
    return kind == Kind::kMfg ? mean_mfg : mean_mkv;
  }
  double c(Kind kind) const {
    return kind == Kind::kMfg ? derived.c_mfg : derived.c_mkv;
  }
  double b(Kind kind) const {
    return kind == Kind::kMfg ? derived.b_mfg : derived.b_mkv;
  }
};

GameSolution SolveGame(const ModelParams& params, const TimeGrid& grid);
GameSolution SolveGame(const ModelParams& params,
                       const DerivedCoefficients& derived,
                       const TimeGrid& grid);

// Policy and control mean derived from an already solved game.
FeedbackPolicy PolicyOf(const GameSolution& game, Kind kind);
Trajectory ControlMeanOf(const GameSolution& game, Kind kind);

}  // namespace mfgpoa
