#include "mfgpoa/cli.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mfgpoa/errors.h"
#include "mfgpoa/model.h"
#include "mfgpoa/social_cost.h"
#include "mfgpoa/sweep.h"
#include "mfgpoa/trajectories.h"
#include "mfgpoa/verify.h"

namespace mfgpoa {

namespace {

std::string Fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, value);
  return buf;
}

// Writes to the configured file, or to `out` when no file is set.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::ios_base::failure("cannot open output: " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }
  void Finish() {
    out_->flush();
    if (!*out_) throw std::ios_base::failure("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

ModelParams LoadModel(const CliConfig& config) {
  return config.model_path.empty() ? ModelParams::Defaults()
                                   : LoadModelFile(config.model_path);
}

// Prints the violations and returns false if the model cannot be solved.
bool CheckModel(const ModelParams& params, std::ostream& err) {
  const ValidationReport report = Validate(params);
  if (report.solvable()) return true;
  err << "invalid model:\n";
  for (const std::string& v : report.violations) err << "  violated: " << v << '\n';
  return false;
}

TimeGrid GridFor(const ModelParams& params, const CliConfig& config) {
  return TimeGrid(params.T, config.grid_n);
}

int CmdPoa(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const ModelParams params = LoadModel(config);
  if (!CheckModel(params, err)) return kExitInvalidModel;
  const CostReport report = PriceOfAnarchy(params, GridFor(params, config));
  Sink sink(config.output_path, out);
  sink.stream() << CostReportToJson(report) << '\n';
  sink.Finish();
  return kExitOk;
}

int CmdEfficiency(const CliConfig& config, std::ostream& out,
                  std::ostream& err) {
  const ModelParams params = LoadModel(config);
  if (!CheckModel(params, err)) return kExitInvalidModel;
  const EfficiencyVerdict verdict = Efficiency(params, GridFor(params, config));
  Sink sink(config.output_path, out);
  sink.stream() << EfficiencyToJson(verdict) << '\n';
  sink.Finish();
  return kExitOk;
}

std::vector<double> SweepValues(const CliConfig& config) {
  if (config.scale == "log") return LogSpace(config.lo, config.hi, config.count);
  return LinSpace(config.lo, config.hi, config.count);
}

int CmdSweep(const CliConfig& config, std::ostream& out, std::ostream& err) {
  if (!IsParameterName(config.parameter)) {
    throw UnknownParameterError(config.parameter);
  }
  SweepSpec spec{LoadModel(config), config.parameter, SweepValues(config),
                 ParsePreset(config.preset)};
  const SweepResult result = RunSweep(spec, config.grid_n);
  bool any_valid = false;
  for (const SweepRow& row : result.rows) any_valid = any_valid || row.valid;
  if (!any_valid) {
    ModelParams first = result.base;
    SetParameter(first, config.parameter, spec.values.front());
    CheckModel(first, err);
    err << "no sweep value yields a solvable model\n";
    return kExitInvalidModel;
  }
  Sink sink(config.output_path, out);
  WriteSweepCsv(result, sink.stream());
  sink.Finish();
  return kExitOk;
}

int CmdLimits(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const ModelParams base = LoadModel(config);
  const InteractionPreset preset = ParsePreset(config.preset);
  std::optional<LimitId> only;
  if (!config.parameter.empty()) {
    for (LimitId id : kAllLimits) {
      if (LimitName(id) == config.parameter) only = id;
    }
    if (!only) throw UnknownParameterError(config.parameter);
  }
  Sink sink(config.output_path, out);
  std::ostream& os = sink.stream();
  os << "preset " << PresetName(preset) << '\n';
  bool failed = false;
  for (LimitId id : kAllLimits) {
    if (only && *only != id) continue;
    SweepSpec spec{base, std::string(LimitParameter(id)),
                   DefaultLimitGrid(id, config.count), preset};
    const SweepResult result = RunSweep(spec, config.grid_n);
    std::string status;
    std::string expected = "?";
    std::string observed;
    try {
      const LimitVerdict verdict = CheckLimit(result, id);
      expected = std::string(ExpectedName(verdict.expected));
      observed = verdict.observed;
      if (verdict.expected == ExpectedLimit::kInconclusive) {
        status = "INCONCLUSIVE";
      } else {
        status = verdict.pass ? "PASS" : "FAIL";
        failed = failed || !verdict.pass;
      }
    } catch (const InsufficientTailError& e) {
      status = "FAIL";
      observed = e.what();
      failed = true;
    }
    os << status << ' ' << LimitName(id) << " expected " << expected << ": "
       << observed << '\n';
  }
  sink.Finish();
  if (failed) err << "limit check failed\n";
  return failed ? kExitCheckFailed : kExitOk;
}

int CmdVerify(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const ModelParams params = LoadModel(config);
  if (!CheckModel(params, err)) return kExitInvalidModel;
  OracleOptions options;
  options.grid_n = config.grid_n;
  options.mc.n_paths = config.paths;
  options.mc.n_steps = config.steps;
  options.mc.seed = config.seed;
  options.corrupt_closed_form = config.corrupt_closed_form;
  const std::vector<OracleCheck> checks = RunOracleSuite(params, options);
  Sink sink(config.output_path, out);
  std::ostream& os = sink.stream();
  bool all = true;
  for (const OracleCheck& c : checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  deviation "
       << Fmt("%.3e", c.deviation) << "  tolerance "
       << Fmt("%.3e", c.tolerance) << '\n';
    all = all && c.passed;
  }
  sink.Finish();
  if (!all) err << "oracle check failed\n";
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int RunCommand(const CliConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.grid_n < 3 || config.grid_n % 2 == 0) {
      throw BadGridError("--grid-n must be odd and at least 3");
    }
    if (config.command == "poa") return CmdPoa(config, out, err);
    if (config.command == "efficiency") return CmdEfficiency(config, out, err);
    if (config.command == "sweep") return CmdSweep(config, out, err);
    if (config.command == "limits") return CmdLimits(config, out, err);
    if (config.command == "verify") return CmdVerify(config, out, err);
    err << "unknown command: " << config.command << '\n';
    return kExitIoOrParse;
  } catch (const UnknownParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnknownParameter;
  } catch (const InvalidModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidModel;
  } catch (const DegenerateCostError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidModel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoOrParse;
  }
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CliConfig config;
  CLI::App app{"Price of anarchy for linear-quadratic extended mean field games",
               "mfg_poa"};
  app.require_subcommand(1);

  auto add_common = [&config](CLI::App* cmd) {
    cmd->add_option("--model", config.model_path,
                    "Model JSON file (default model when omitted)");
    cmd->add_option("--out", config.output_path,
                    "Output file (standard output when omitted)");
    cmd->add_option("--grid-n", config.grid_n, "Time grid points (odd, >= 3)");
  };

  CLI::App* poa = app.add_subcommand("poa", "Social costs and price of anarchy");
  add_common(poa);
  CLI::App* eff = app.add_subcommand("efficiency", "Decide whether PoA = 1");
  add_common(eff);

  CLI::App* sweep = app.add_subcommand("sweep", "PoA over a parameter grid");
  add_common(sweep);
  sweep->add_option("--param", config.parameter, "Swept parameter")->required();
  sweep->add_option("--lo", config.lo, "Lowest value");
  sweep->add_option("--hi", config.hi, "Highest value");
  sweep->add_option("--count", config.count, "Number of values");
  sweep->add_option("--scale", config.scale, "Value spacing")
      ->check(CLI::IsMember({"log", "linear"}));
  sweep->add_option("--preset", config.preset, "Interaction preset")
      ->check(CLI::IsMember({"full", "states", "controls", "none"}));

  CLI::App* limits = app.add_subcommand("limits", "Check asymptotic PoA limits");
  add_common(limits);
  limits->add_option("--param", config.parameter,
                     "Single limit to check, e.g. r->inf");
  limits->add_option("--count", config.count, "Values per limit sweep");
  limits->add_option("--preset", config.preset, "Interaction preset")
      ->check(CLI::IsMember({"full", "states", "controls", "none"}));

  CLI::App* verify = app.add_subcommand("verify", "Run the oracle suite");
  add_common(verify);
  verify->add_option("--paths", config.paths, "Monte Carlo paths");
  verify->add_option("--steps", config.steps, "Euler steps per path");
  verify->add_option("--seed", config.seed, "Random seed");
  verify->add_flag("--corrupt-closed-form", config.corrupt_closed_form)
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIoOrParse;
  }
  config.command = app.get_subcommands().front()->get_name();
  return RunCommand(config, out, err);
}

}  // namespace mfgpoa
