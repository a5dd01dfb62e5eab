#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mfgpoa/model.h"
#include "mfgpoa/riccati.h"
#include "mfgpoa/trajectories.h"

namespace mfgpoa {

// Classical RK4 for rho' = B rho^2 + 2 A rho - C, integrated backward from
// rho(T) = D over the grid. Throws BlowupError if |rho| exceeds 1e12.
Trajectory Rk4Riccati(const RiccatiSpec& spec, double horizon,
                      const TimeGrid& grid);

enum class Direction { kForward, kBackward };

using ScalarFn = std::function<double(double)>;

// Classical RK4 for y' = p(t) y + r(t). The boundary value is y(0) for
// kForward and y(T) for kBackward. Coefficients are evaluated off-grid at
// the RK4 stage times.
Trajectory Rk4Linear(const ScalarFn& p, const ScalarFn& r,
                     double boundary_value, Direction direction,
                     const TimeGrid& grid);

struct McConfig {
  int64_t n_paths = 100000;
  int n_steps = 2000;
  uint64_t seed = 42;
  // Pairs each Gaussian draw with its negation; n_paths must then be even.
  bool antithetic = false;
};

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;
  int64_t n_paths = 0;
  double dt = 0.0;
};

// Euler-Maruyama estimate of the social cost of `policy` with the mean-field
// environment frozen at the deterministic flows `mean_state` and
// `control_mean`. The grid must satisfy (size - 1) % n_steps == 0. Paths use
// independent per-index random streams and are reduced pairwise in index
// order, so the result depends only on the inputs and the seed.
//
// Throws InvalidModelError for unsolvable parameters and
// IncompatibleGridError for mismatched grids.
McEstimate McSocialCost(const ModelParams& params, const FeedbackPolicy& policy,
                        const Trajectory& mean_state,
                        const Trajectory& control_mean, const McConfig& cfg);

// Same simulation without parameter validation.
McEstimate SimulateSocialCost(const ModelParams& params,
                              const FeedbackPolicy& policy,
                              const Trajectory& mean_state,
                              const Trajectory& control_mean,
                              const McConfig& cfg);

// Worker count for path and row parallelism: hardware concurrency capped by
// the MFG_POA_THREADS environment variable when set.
int WorkerCount();

// max_k |a_k - b_k| / max(|a_k|, |b_k|), with 0/0 read as 0.
double MaxRelativeDeviation(const std::vector<double>& a,
                            const std::vector<double>& b);

struct OracleCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct OracleOptions {
  int grid_n = TimeGrid::kDefaultPoints;
  McConfig mc;
  bool monte_carlo = true;
  // Negative control: perturbs the closed-form curves before comparison.
  bool corrupt_closed_form = false;
};

// Closed forms against RK4, the two planner-cost routes, the two cost-gap
// routes and Monte Carlo against both analytic social costs.
std::vector<OracleCheck> RunOracleSuite(const ModelParams& params,
                                        const OracleOptions& options);

}  // namespace mfgpoa
