#include "mfgpoa/sweep.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mfgpoa/errors.h"
#include "mfgpoa/social_cost.h"

namespace mfgpoa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRatioTol = 1e-12;
constexpr double kFlatTol = 1e-12;

bool RatiosEqual(double lhs, double rhs) {
  return std::abs(lhs - rhs) <=
         kRatioTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string_view PresetName(InteractionPreset preset) {
  switch (preset) {
    case InteractionPreset::kFull:
      return "FULL";
    case InteractionPreset::kStatesOnly:
      return "STATES_ONLY";
    case InteractionPreset::kControlsOnly:
      return "CONTROLS_ONLY";
    case InteractionPreset::kNone:
      return "NONE";
  }
  return "?";
}

InteractionPreset ParsePreset(std::string_view name) {
  if (name == "full" || name == "FULL") return InteractionPreset::kFull;
  if (name == "states" || name == "STATES_ONLY") {
    return InteractionPreset::kStatesOnly;
  }
  if (name == "controls" || name == "CONTROLS_ONLY") {
    return InteractionPreset::kControlsOnly;
  }
  if (name == "none" || name == "NONE") return InteractionPreset::kNone;
  throw std::invalid_argument("unknown preset: " + std::string(name));
}

ModelParams ApplyPreset(ModelParams params, InteractionPreset preset) {
  switch (preset) {
    case InteractionPreset::kFull:
      break;
    case InteractionPreset::kStatesOnly:
      params.b2_bar = 0.0;
      params.r_bar = 0.0;
      break;
    case InteractionPreset::kControlsOnly:
      params.b1_bar = 0.0;
      params.q_bar = 0.0;
      params.q_bar_T = 0.0;
      break;
    case InteractionPreset::kNone:
      params.b1_bar = 0.0;
      params.b2_bar = 0.0;
      params.q_bar = 0.0;
      params.r_bar = 0.0;
      params.q_bar_T = 0.0;
      break;
  }
  return params;
}

std::vector<double> LogSpace(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) {
    throw std::invalid_argument("log grid needs 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(static_cast<size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < count; ++i) {
    out[static_cast<size_t>(i)] = std::pow(10.0, a + (b - a) * i / (count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> LinSpace(double lo, double hi, int count) {
  if (!(hi >= lo) || count < 1) {
    throw std::invalid_argument("linear grid needs lo <= hi and count >= 1");
  }
  std::vector<double> out(static_cast<size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  out.back() = hi;
  return out;
}

SweepResult RunSweep(const SweepSpec& spec, int grid_n) {
  if (!IsParameterName(spec.parameter)) {
    throw UnknownParameterError(spec.parameter);
  }
  SweepResult result{spec.parameter, ApplyPreset(spec.base, spec.preset), {}};
  result.rows.reserve(spec.values.size());
  for (const double value : spec.values) {
    ModelParams params = result.base;
    SetParameter(params, spec.parameter, value);
    const ValidationReport report = Validate(params);
    SweepRow row{value, kNaN, kNaN, kNaN, report.theorem1_ok,
                 report.assumption1_ok, false};
    if (report.solvable()) {
      try {
        const CostReport cost =
            PriceOfAnarchy(params, TimeGrid(params.T, grid_n));
        row.poa = cost.poa;
        row.delta_sc = cost.delta_prop2;
        row.sc_mkv = cost.sc_mkv;
        row.valid = true;
      } catch (const DegenerateCostError&) {
        // Recorded as an invalid row.
      }
    }
    result.rows.push_back(row);
  }
  return result;
}

void WriteSweepCsv(const SweepResult& result, std::ostream& out) {
  out << "param,value,poa,delta_sc,sc_mkv,valid\n";
  for (const SweepRow& row : result.rows) {
    out << result.parameter << ',' << FormatDouble(row.value) << ','
        << FormatDouble(row.poa) << ',' << FormatDouble(row.delta_sc) << ','
        << FormatDouble(row.sc_mkv) << ',' << (row.valid ? 1 : 0) << '\n';
  }
}

SweepResult ReadSweepCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      line != "param,value,poa,delta_sc,sc_mkv,valid") {
    throw ParseError("unexpected sweep CSV header");
  }
  SweepResult result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw ParseError("bad sweep CSV row: " + line);
    if (result.parameter.empty()) result.parameter = cells[0];
    SweepRow row;
    try {
      row.value = std::stod(cells[1]);
      row.poa = std::stod(cells[2]);
      row.delta_sc = std::stod(cells[3]);
      row.sc_mkv = std::stod(cells[4]);
    } catch (const std::exception&) {
      throw ParseError("bad number in sweep CSV row: " + line);
    }
    row.valid = cells[5] == "1";
    result.rows.push_back(row);
  }
  return result;
}

std::string_view LimitName(LimitId id) {
  switch (id) {
    case LimitId::kRToInfinity:
      return "r->inf";
    case LimitId::kRBarToInfinity:
      return "r_bar->inf";
    case LimitId::kB2ToInfinity:
      return "b2->inf";
    case LimitId::kB2ToZero:
      return "b2->0";
    case LimitId::kB2BarToInfinity:
      return "b2_bar->inf";
    case LimitId::kB2BarToZero:
      return "b2_bar->0";
    case LimitId::kB1ToInfinity:
      return "b1->inf";
    case LimitId::kB1BarToInfinity:
      return "b1_bar->inf";
    case LimitId::kB1ToZero:
      return "b1->0";
    case LimitId::kB1BarToZero:
      return "b1_bar->0";
  }
  return "?";
}

std::string_view LimitParameter(LimitId id) {
  switch (id) {
    case LimitId::kRToInfinity:
      return "r";
    case LimitId::kRBarToInfinity:
      return "r_bar";
    case LimitId::kB2ToInfinity:
    case LimitId::kB2ToZero:
      return "b2";
    case LimitId::kB2BarToInfinity:
    case LimitId::kB2BarToZero:
      return "b2_bar";
    case LimitId::kB1ToInfinity:
    case LimitId::kB1ToZero:
      return "b1";
    case LimitId::kB1BarToInfinity:
    case LimitId::kB1BarToZero:
      return "b1_bar";
  }
  return "?";
}

bool LimitToInfinity(LimitId id) {
  switch (id) {
    case LimitId::kB2ToZero:
    case LimitId::kB2BarToZero:
    case LimitId::kB1ToZero:
    case LimitId::kB1BarToZero:
      return false;
    default:
      return true;
  }
}

std::string_view ExpectedName(ExpectedLimit expected) {
  switch (expected) {
    case ExpectedLimit::kOne:
      return "1";
    case ExpectedLimit::kAboveOne:
      return ">1";
    case ExpectedLimit::kInfinity:
      return "inf";
    case ExpectedLimit::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

ExpectedLimit ExpectedLimitFor(LimitId id, const ModelParams& p) {
  const double one_s = 1.0 - p.s;
  const double one_sb = 1.0 - p.s_bar;
  const double one_sT = 1.0 - p.s_T;
  const double control_ratio =
      (p.r + p.r_bar * one_sb * one_sb) / (p.r + p.r_bar * one_sb);
  const double terminal_mfg = p.q_T + p.q_bar_T * one_sT;
  const double terminal_mkv = p.q_T + p.q_bar_T * one_sT * one_sT;
  switch (id) {
    case LimitId::kRToInfinity:
    case LimitId::kRBarToInfinity:
    case LimitId::kB2BarToInfinity:
    case LimitId::kB1ToInfinity:
      return ExpectedLimit::kOne;
    case LimitId::kB1BarToInfinity:
      return ExpectedLimit::kInfinity;
    case LimitId::kB2ToInfinity: {
      const double lhs = (p.q + p.q_bar * one_s) / (p.r + p.r_bar * one_sb);
      const double rhs =
          (p.q + p.q_bar * one_s * one_s) / (p.r + p.r_bar * one_sb * one_sb);
      return RatiosEqual(lhs, rhs) ? ExpectedLimit::kOne
                                   : ExpectedLimit::kAboveOne;
    }
    case LimitId::kB2ToZero:
      return p.b2_bar == 0.0 ? ExpectedLimit::kOne : ExpectedLimit::kAboveOne;
    case LimitId::kB2BarToZero:
      return RatiosEqual(control_ratio, terminal_mkv / terminal_mfg)
                 ? ExpectedLimit::kInconclusive
                 : ExpectedLimit::kAboveOne;
    case LimitId::kB1ToZero:
    case LimitId::kB1BarToZero: {
      const double lhs = p.b2 / (p.b2 + p.b2_bar) * control_ratio * terminal_mfg;
      return RatiosEqual(lhs, terminal_mkv) ? ExpectedLimit::kInconclusive
                                            : ExpectedLimit::kAboveOne;
    }
  }
  return ExpectedLimit::kInconclusive;
}

LimitVerdict CheckLimit(const SweepResult& result, LimitId id) {
  if (result.parameter != LimitParameter(id)) {
    throw std::invalid_argument("sweep over " + result.parameter +
                                " cannot decide " + std::string(LimitName(id)));
  }
  std::vector<SweepRow> rows;
  for (const SweepRow& row : result.rows) {
    if (row.valid && row.value > 0.0) rows.push_back(row);
  }
  // Tail-most row first.
  const bool to_inf = LimitToInfinity(id);
  std::sort(rows.begin(), rows.end(),
            [to_inf](const SweepRow& a, const SweepRow& b) {
              return to_inf ? a.value > b.value : a.value < b.value;
            });
  if (rows.size() < 3) {
    throw InsufficientTailError("fewer than three valid rows");
  }
  const SweepRow& tail = rows.front();
  const double target = to_inf ? tail.value / 10.0 : tail.value * 10.0;
  const double span = std::abs(std::log10(rows.back().value / tail.value));
  if (span < 1.0 - 1e-9) {
    throw InsufficientTailError("valid rows span less than one decade");
  }
  const auto ref = std::min_element(
      rows.begin(), rows.end(), [target](const SweepRow& a, const SweepRow& b) {
        return std::abs(std::log(a.value / target)) <
               std::abs(std::log(b.value / target));
      });

  LimitVerdict verdict;
  verdict.id = id;
  verdict.expected = ExpectedLimitFor(id, result.base);
  const double tail_excess = tail.poa - 1.0;
  const double ref_excess = ref->poa - 1.0;
  std::ostringstream observed;
  observed << "poa-1 = " << Short(tail_excess) << " at " << result.parameter
           << "=" << Short(tail.value) << ", " << Short(ref_excess) << " at "
           << Short(ref->value);

  switch (verdict.expected) {
    case ExpectedLimit::kOne:
      // A curve already at 1 to rounding has nothing left to decay.
      verdict.pass = (std::abs(tail_excess) < 0.5 * std::abs(ref_excess) ||
                      std::abs(tail_excess) <= kFlatTol) &&
                     std::abs(tail_excess) < 1e-2;
      break;
    case ExpectedLimit::kAboveOne:
      verdict.pass = rows[0].poa - 1.0 > 1e-3 && rows[1].poa - 1.0 > 1e-3 &&
                     rows[2].poa - 1.0 > 1e-3;
      break;
    case ExpectedLimit::kInfinity:
      verdict.pass = tail.poa > 2.0 * ref->poa;
      observed << "; growth x" << Short(tail.poa / ref->poa) << " per decade";
      break;
    case ExpectedLimit::kInconclusive:
      verdict.pass = false;
      observed << "; ratio condition fails, limit not decided";
      break;
  }
  verdict.observed = observed.str();
  return verdict;
}

std::vector<double> DefaultLimitGrid(LimitId id, int count) {
  if (!LimitToInfinity(id)) return LogSpace(1e-3, 1e1, count);
  switch (id) {
    case LimitId::kRToInfinity:
    case LimitId::kRBarToInfinity:
      return LogSpace(1e-2, 1e5, count);
    case LimitId::kB1BarToInfinity:
      return LogSpace(1e-2, 1e2, count);
    default:
      return LogSpace(1e-2, 1e3, count);
  }
}

}  // namespace mfgpoa
