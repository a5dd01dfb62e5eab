#include "mfgpoa/verify.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <random>
#include <span>
#include <stdexcept>
#include <thread>

#include "mfgpoa/errors.h"
#include "mfgpoa/social_cost.h"

namespace mfgpoa {

namespace {

constexpr double kBlowup = 1e12;

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Pairwise sum in index order; fixed association for a given length.
double PairwiseSum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (const double v : x) s += v;
    return s;
  }
  const size_t half = x.size() / 2;
  return PairwiseSum(x.first(half)) + PairwiseSum(x.subspan(half));
}

// Left-rectangle cost of one path driven by `noise` (n_steps + 1 normals:
// the initial draw then one per step), scaled by `sign`.
class PathSimulator {
 public:
  PathSimulator(const ModelParams& p, const FeedbackPolicy& policy,
                const Trajectory& mean_state, const Trajectory& control_mean,
                int n_steps)
      : p_(p),
        policy_(policy),
        mean_(mean_state.values),
        nu_(control_mean.values),
        n_steps_(n_steps),
        stride_((mean_state.grid.size() - 1) / n_steps),
        dt_(p.T / n_steps),
        sqrt_dt_(std::sqrt(dt_)) {}

  double Run(std::span<const double> noise, double sign) const {
    const ModelParams& p = p_;
    double x = p.xi_mean + std::sqrt(p.xi_var) * sign * noise[0];
    double cost = 0.0;
    for (int step = 0; step < n_steps_; ++step) {
      const int k = step * stride_;
      const double m = mean_[static_cast<size_t>(k)];
      const double nu = nu_[static_cast<size_t>(k)];
      const double alpha = policy_(k, x);
      const double dev_x = x - p.s * m;
      const double dev_a = alpha - p.s_bar * nu;
      cost += 0.5 * dt_ *
              (p.q * x * x + p.q_bar * dev_x * dev_x + p.r * alpha * alpha +
               p.r_bar * dev_a * dev_a);
      const double drift =
          p.b1 * x + p.b1_bar * m + p.b2 * alpha + p.b2_bar * nu;
      x += drift * dt_ +
           p.sigma * sqrt_dt_ * sign * noise[static_cast<size_t>(step) + 1];
    }
    const double m_T = mean_.back();
    const double dev_T = x - p.s_T * m_T;
    cost += 0.5 * (p.q_T * x * x + p.q_bar_T * dev_T * dev_T);
    return cost;
  }

  double dt() const { return dt_; }

 private:
  const ModelParams& p_;
  const FeedbackPolicy& policy_;
  const std::vector<double>& mean_;
  const std::vector<double>& nu_;
  int n_steps_;
  int stride_;
  double dt_;
  double sqrt_dt_;
};

void CheckGrids(const FeedbackPolicy& policy, const Trajectory& mean_state,
                const Trajectory& control_mean, const ModelParams& params,
                const McConfig& cfg) {
  if (cfg.n_paths < 2) throw std::invalid_argument("n_paths must be >= 2");
  if (cfg.n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (cfg.antithetic && cfg.n_paths % 2 != 0) {
    throw std::invalid_argument("antithetic sampling needs an even n_paths");
  }
  const TimeGrid& grid = mean_state.grid;
  if (!(policy.slope.grid == grid) || !(policy.intercept.grid == grid) ||
      !(control_mean.grid == grid)) {
    throw IncompatibleGridError("policy and flows live on different grids");
  }
  if ((grid.size() - 1) % cfg.n_steps != 0) {
    throw IncompatibleGridError("grid of " + std::to_string(grid.size()) +
                                " points cannot host " +
                                std::to_string(cfg.n_steps) + " steps");
  }
  if (grid.horizon() != params.T) {
    throw IncompatibleGridError("grid horizon differs from model horizon");
  }
}

}  // namespace

Trajectory Rk4Riccati(const RiccatiSpec& spec, double horizon,
                      const TimeGrid& grid) {
  if (grid.horizon() != horizon) {
    throw IncompatibleGridError("grid horizon differs from Riccati horizon");
  }
  const auto f = [&spec](double rho) {
    return spec.B * rho * rho + 2.0 * spec.A * rho - spec.C;
  };
  const int n = grid.size();
  Trajectory out{grid, std::vector<double>(static_cast<size_t>(n)), "rho_rk4"};
  double rho = spec.D;
  out.values.back() = rho;
  const double h = -grid.step();
  for (int k = n - 1; k > 0; --k) {
    const double k1 = f(rho);
    const double k2 = f(rho + 0.5 * h * k1);
    const double k3 = f(rho + 0.5 * h * k2);
    const double k4 = f(rho + h * k3);
    rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(rho) || std::abs(rho) > kBlowup) {
      throw BlowupError("Riccati RK4 blew up at t = " +
                        std::to_string(grid.point(k - 1)));
    }
    out.values[static_cast<size_t>(k - 1)] = rho;
  }
  return out;
}

Trajectory Rk4Linear(const ScalarFn& p, const ScalarFn& r,
                     double boundary_value, Direction direction,
                     const TimeGrid& grid) {
  const auto f = [&](double t, double y) { return p(t) * y + r(t); };
  const int n = grid.size();
  Trajectory out{grid, std::vector<double>(static_cast<size_t>(n)), "y_rk4"};
  const bool forward = direction == Direction::kForward;
  const double h = forward ? grid.step() : -grid.step();
  int k = forward ? 0 : n - 1;
  double y = boundary_value;
  out.values[static_cast<size_t>(k)] = y;
  for (int i = 1; i < n; ++i) {
    const double t = grid.point(k);
    const double k1 = f(t, y);
    const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(t + h, y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    k += forward ? 1 : -1;
    out.values[static_cast<size_t>(k)] = y;
  }
  return out;
}

int WorkerCount() {
  int count = static_cast<int>(std::thread::hardware_concurrency());
  if (count < 1) count = 1;
  if (const char* cap = std::getenv("MFG_POA_THREADS")) {
    const int limit = std::atoi(cap);
    if (limit >= 1) count = std::min(count, limit);
  }
  return count;
}

McEstimate SimulateSocialCost(const ModelParams& params,
                              const FeedbackPolicy& policy,
                              const Trajectory& mean_state,
                              const Trajectory& control_mean,
                              const McConfig& cfg) {
  CheckGrids(policy, mean_state, control_mean, params, cfg);
  const PathSimulator sim(params, policy, mean_state, control_mean,
                          cfg.n_steps);
  const int64_t n_samples = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
  std::vector<double> samples(static_cast<size_t>(n_samples));

  const auto work = [&](int64_t begin, int64_t end) {
    std::vector<double> noise(static_cast<size_t>(cfg.n_steps) + 1);
    for (int64_t i = begin; i < end; ++i) {
      std::mt19937_64 gen(SplitMix64(cfg.seed ^ SplitMix64(static_cast<uint64_t>(i))));
      std::normal_distribution<double> normal;
      for (double& z : noise) z = normal(gen);
      double value = sim.Run(noise, 1.0);
      if (cfg.antithetic) value = 0.5 * (value + sim.Run(noise, -1.0));
      samples[static_cast<size_t>(i)] = value;
    }
  };

  const int workers =
      static_cast<int>(std::min<int64_t>(WorkerCount(), n_samples));
  if (workers <= 1) {
    work(0, n_samples);
  } else {
    std::vector<std::jthread> threads;
    const int64_t chunk = (n_samples + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int64_t begin = w * chunk;
      const int64_t end = std::min(n_samples, begin + chunk);
      if (begin < end) threads.emplace_back(work, begin, end);
    }
  }

  // Moments of the samples shifted by the first one: identical samples give
  // an exactly zero spread.
  const double pivot = samples.front();
  std::vector<double> shifted(samples.size());
  std::vector<double> squares(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    shifted[i] = samples[i] - pivot;
    squares[i] = shifted[i] * shifted[i];
  }
  const double n = static_cast<double>(n_samples);
  const double sum = PairwiseSum(shifted);
  const double sum_sq = PairwiseSum(squares);
  McEstimate est;
  est.mean = pivot + sum / n;
  double var = n > 1 ? (sum_sq - sum * sum / n) / (n - 1.0) : 0.0;
  if (var < 0.0) var = 0.0;
  est.std_err = std::sqrt(var / n);
  est.n_paths = cfg.n_paths;
  est.dt = sim.dt();
  return est;
}

McEstimate McSocialCost(const ModelParams& params, const FeedbackPolicy& policy,
                        const Trajectory& mean_state,
                        const Trajectory& control_mean, const McConfig& cfg) {
  if (!Validate(params).solvable()) {
    throw InvalidModelError("Monte Carlo needs a solvable model");
  }
  return SimulateSocialCost(params, policy, mean_state, control_mean, cfg);
}

double MaxRelativeDeviation(const std::vector<double>& a,
                            const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw IncompatibleGridError("compared curves differ in length");
  }
  double worst = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    const double scale = std::max(std::abs(a[k]), std::abs(b[k]));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(a[k] - b[k]) / scale);
  }
  return worst;
}

std::vector<OracleCheck> RunOracleSuite(const ModelParams& params,
                                        const OracleOptions& options) {
  const TimeGrid grid(params.T, options.grid_n);
  GameSolution game = SolveGame(params, grid);
  if (options.corrupt_closed_form) {
    for (double& v : game.u.values) v *= 1.0 + 1e-4;
    for (double& v : game.mean_mfg.values) v *= 1.0 + 1e-4;
  }
  const DerivedCoefficients& d = game.derived;
  const RiccatiSolutions sol = SolveModelRiccati(params, d);
  std::vector<OracleCheck> checks;
  const auto add = [&checks](std::string name, double deviation,
                             double tolerance) {
    checks.push_back(
        {std::move(name), deviation, tolerance, deviation <= tolerance});
  };

  add("riccati u closed form vs RK4",
      MaxRelativeDeviation(game.u.values,
                           Rk4Riccati(d.riccati_u, params.T, grid).values),
      1e-8);
  add("riccati w closed form vs RK4",
      MaxRelativeDeviation(game.w.values,
                           Rk4Riccati(d.riccati_w, params.T, grid).values),
      1e-8);
  add("riccati eta closed form vs RK4",
      MaxRelativeDeviation(game.eta.values,
                           Rk4Riccati(d.riccati_eta, params.T, grid).values),
      1e-8);

  const double growth = params.b1 + params.b1_bar;
  const double big_b = d.riccati_u.B;
  const ScalarFn zero = [](double) { return 0.0; };
  const Trajectory mfg_ode = Rk4Linear(
      [&](double t) { return growth - big_b * sol.u.Evaluate(t); }, zero,
      params.xi_mean, Direction::kForward, grid);
  add("x_bar MFG explicit vs RK4",
      MaxRelativeDeviation(game.mean_mfg.values, mfg_ode.values), 1e-7);
  const Trajectory mkv_ode = Rk4Linear(
      [&](double t) { return growth - big_b * sol.w.Evaluate(t); }, zero,
      params.xi_mean, Direction::kForward, grid);
  add("x_bar MKV explicit vs RK4",
      MaxRelativeDeviation(game.mean_mkv.values, mkv_ode.values), 1e-7);
  const double b_eta = d.riccati_eta.B;
  const double sigma2 = params.sigma * params.sigma;
  const Trajectory var_ode = Rk4Linear(
      [&](double t) {
        return 2.0 * (params.b1 - b_eta * sol.eta.Evaluate(t));
      },
      [sigma2](double) { return sigma2; }, params.xi_var, Direction::kForward,
      grid);
  add("variance explicit vs RK4",
      MaxRelativeDeviation(game.variance.values, var_ode.values), 1e-7);

  const CostReport report = PriceOfAnarchyOf(game);
  const double shortcut = PlannerCostShortcut(game);
  add("SC_MKV full form vs shortcut",
      std::abs(report.sc_mkv - shortcut) / std::abs(shortcut), 1e-8);
  add("delta SC direct vs integral",
      std::abs(report.delta_direct - report.delta_prop2),
      std::max(1e-8, 1e-8 * report.sc_mkv));

  if (!options.monte_carlo) return checks;
  // Monte Carlo runs on a grid whose spacing matches the Euler step.
  const int steps = options.mc.n_steps;
  const int mc_points = steps % 2 == 0 ? steps + 1 : 2 * steps + 1;
  const GameSolution mc_game = SolveGame(params, TimeGrid(params.T, mc_points));
  const bool deterministic = params.sigma == 0.0 && params.xi_var == 0.0;
  for (const Kind kind : {Kind::kMkv, Kind::kMfg}) {
    const McEstimate est =
        McSocialCost(params, PolicyOf(mc_game, kind),
                     mc_game.mean_state(kind), ControlMeanOf(mc_game, kind),
                     options.mc);
    const double analytic = kind == Kind::kMkv ? report.sc_mkv : report.sc_mfg;
    const std::string label =
        "Monte Carlo SC_" + std::string(KindName(kind)) + " vs analytic";
    if (deterministic) {
      const double rel = std::abs(est.mean - analytic) / std::abs(analytic);
      add(label + " (deterministic, relative)",
          est.std_err == 0.0 ? rel : std::numeric_limits<double>::infinity(),
          1e-3);
    } else {
      add(label, std::abs(est.mean - analytic),
          3.0 * est.std_err + 2e-3 * std::abs(analytic));
    }
  }
  return checks;
}

}  // namespace mfgpoa
