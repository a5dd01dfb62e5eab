#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mfgpoa/model.h"
#include "mfgpoa/trajectories.h"

namespace mfgpoa {

// Interaction presets applied to the base model before sweeping.
enum class InteractionPreset {
  kFull,          // base model unchanged
  kStatesOnly,    // b2_bar = r_bar = 0
  kControlsOnly,  // b1_bar = q_bar = q_bar_T = 0
  kNone,          // every mean-field coupling coefficient zeroed
};

std::string_view PresetName(InteractionPreset preset);
// Accepts "full", "states", "controls", "none" (and the upper-case names).
InteractionPreset ParsePreset(std::string_view name);
ModelParams ApplyPreset(ModelParams params, InteractionPreset preset);

// count values from lo to hi, log- or linearly spaced; both ends exact.
std::vector<double> LogSpace(double lo, double hi, int count);
std::vector<double> LinSpace(double lo, double hi, int count);

struct SweepSpec {
  ModelParams base;
  std::string parameter;
  std::vector<double> values;
  InteractionPreset preset = InteractionPreset::kFull;
};

struct SweepRow {
  double value = 0.0;
  double poa = 0.0;  // NaN when !valid
  double delta_sc = 0.0;
  double sc_mkv = 0.0;
  bool theorem1_ok = false;
  bool assumption1_ok = false;
  // The model was solvable and the planner cost positive.
  bool valid = false;
};

struct SweepResult {
  std::string parameter;
  ModelParams base;  // after the preset, before the swept value
  std::vector<SweepRow> rows;
};

// One price-of-anarchy evaluation per value, in input order, each on a grid
// of grid_n points over that row's horizon. Rows that fail validation are
// kept with their flags and NaN costs. Throws UnknownParameterError.
SweepResult RunSweep(const SweepSpec& spec,
                     int grid_n = TimeGrid::kDefaultPoints);

// Header "param,value,poa,delta_sc,sc_mkv,valid"; 17 significant digits.
void WriteSweepCsv(const SweepResult& result, std::ostream& out);
// Inverse of WriteSweepCsv for the columns it writes. Throws ParseError.
SweepResult ReadSweepCsv(std::istream& in);

// One-sided parameter limits with a known or conditional PoA limit.
enum class LimitId {
  kRToInfinity,
  kRBarToInfinity,
  kB2ToInfinity,
  kB2ToZero,
  kB2BarToInfinity,
  kB2BarToZero,
  kB1ToInfinity,
  kB1BarToInfinity,
  kB1ToZero,
  kB1BarToZero,
};

inline constexpr LimitId kAllLimits[] = {
    LimitId::kRToInfinity,    LimitId::kRBarToInfinity,
    LimitId::kB2ToInfinity,   LimitId::kB2ToZero,
    LimitId::kB2BarToInfinity, LimitId::kB2BarToZero,
    LimitId::kB1ToInfinity,   LimitId::kB1BarToInfinity,
    LimitId::kB1ToZero,       LimitId::kB1BarToZero,
};

std::string_view LimitName(LimitId id);
// Swept parameter and direction of a limit.
std::string_view LimitParameter(LimitId id);
bool LimitToInfinity(LimitId id);

enum class ExpectedLimit { kOne, kAboveOne, kInfinity, kInconclusive };

std::string_view ExpectedName(ExpectedLimit expected);

// Expected limit for this base model. Conditional limits evaluate their
// ratio condition on `base`; when it fails the outcome is kInconclusive.
ExpectedLimit ExpectedLimitFor(LimitId id, const ModelParams& base);

struct LimitVerdict {
  LimitId id = LimitId::kRToInfinity;
  ExpectedLimit expected = ExpectedLimit::kOne;
  std::string observed;
  bool pass = false;
};

// Tail rules, with "tail" the largest (to infinity) or smallest (to zero)
// valid value and "reference" the value one decade before it:
//   limit 1   |poa - 1| at the tail below 0.5 x the reference (or already
//             below 1e-12) and below 1e-2;
//   limit >1  the three tail-most rows all have poa - 1 > 1e-3;
//   infinite  tail poa more than 2 x the reference poa.
// Inconclusive expectations never pass. Throws InsufficientTailError if the
// valid rows span less than one decade, and std::invalid_argument if the
// sweep varied a different parameter.
LimitVerdict CheckLimit(const SweepResult& result, LimitId id);

// Sweep values used for a limit: count log-spaced values over the decades
// [1e-2, 1e3] (to infinity) or [1e-3, 1e1] (to zero), with the upper end
// for b1_bar capped at 1e2.
std::vector<double> DefaultLimitGrid(LimitId id, int count = 60);

}  // namespace mfgpoa
