#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace mfgpoa {

// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitIoOrParse = 1,
  kExitInvalidModel = 2,
  kExitUnknownParameter = 3,
  kExitCheckFailed = 4,
};

struct CliConfig {
  std::string command;
  std::string model_path;  // empty: default model
  std::string output_path;  // empty: standard output
  int grid_n = 2001;
  int64_t paths = 100000;
  int steps = 2000;
  uint64_t seed = 42;
  std::string parameter;
  double lo = 1e-2;
  double hi = 1e3;
  int count = 60;
  std::string scale = "log";
  std::string preset = "full";
  bool corrupt_closed_form = false;
};

int RunCommand(const CliConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs the selected subcommand. Reports go to `out` unless
// --out names a file; diagnostics go to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace mfgpoa
