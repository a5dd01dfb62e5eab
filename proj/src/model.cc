#include "mfgpoa/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mfgpoa/errors.h"

namespace mfgpoa {

namespace {

using Member = double ModelParams::*;

constexpr std::array<Member, 17> kMembers = {
    &ModelParams::b1,      &ModelParams::b1_bar, &ModelParams::b2,
    &ModelParams::b2_bar,  &ModelParams::sigma,  &ModelParams::q,
    &ModelParams::q_bar,   &ModelParams::s,      &ModelParams::r,
    &ModelParams::r_bar,   &ModelParams::s_bar,  &ModelParams::q_T,
    &ModelParams::q_bar_T, &ModelParams::s_T,    &ModelParams::xi_mean,
    &ModelParams::xi_var,  &ModelParams::T};

Member FindMember(std::string_view name) {
  const auto it =
      std::find(kParameterNames.begin(), kParameterNames.end(), name);
  if (it == kParameterNames.end()) {
    throw UnknownParameterError(std::string(name));
  }
  return kMembers[static_cast<size_t>(it - kParameterNames.begin())];
}

void AddCheck(std::vector<ValidationCheck>& checks, std::string name,
              bool passed) {
  checks.push_back({std::move(name), passed});
}

bool AllPassed(const std::vector<ValidationCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

}  // namespace

ModelParams ModelParams::Defaults() {
  ModelParams p;
  p.b1 = 1.0;
  p.b1_bar = 1.0;
  p.b2 = 1.0;
  p.b2_bar = 1.0;
  p.sigma = 1.0;
  p.q = 1.0;
  p.q_bar = 1.0;
  p.s = 0.5;
  p.r = 1.0;
  p.r_bar = 1.0;
  p.s_bar = 0.5;
  p.q_T = 1.0;
  p.q_bar_T = 1.0;
  p.s_T = 0.5;
  p.xi_mean = 1.0;
  p.xi_var = 0.0;
  p.T = 1.0;
  return p;
}

double GetParameter(const ModelParams& params, std::string_view name) {
  return params.*FindMember(name);
}

void SetParameter(ModelParams& params, std::string_view name, double value) {
  params.*FindMember(name) = value;
}

bool IsParameterName(std::string_view name) {
  return std::find(kParameterNames.begin(), kParameterNames.end(), name) !=
         kParameterNames.end();
}

ValidationReport Validate(const ModelParams& p) {
  ValidationReport report;

  auto& dom = report.domain_checks;
  bool finite = true;
  for (const Member m : kMembers) finite = finite && std::isfinite(p.*m);
  AddCheck(dom, "all parameters finite", finite);
  AddCheck(dom, "T > 0", p.T > 0.0);
  AddCheck(dom, "sigma >= 0", p.sigma >= 0.0);
  AddCheck(dom, "xi_var >= 0", p.xi_var >= 0.0);
  bool nonneg = true;
  for (size_t i = 0; i < kMembers.size(); ++i) {
    const std::string_view name = kParameterNames[i];
    if (name == "sigma" || name == "xi_mean" || name == "xi_var" ||
        name == "T") {
      continue;
    }
    nonneg = nonneg && p.*kMembers[i] >= 0.0;
  }
  AddCheck(dom, "coefficients >= 0", nonneg);

  const double one_s = 1.0 - p.s;
  const double one_sb = 1.0 - p.s_bar;
  const double one_sT = 1.0 - p.s_T;
  auto& thm = report.theorem1_checks;
  AddCheck(thm, "b2 > 0", p.b2 > 0.0);
  AddCheck(thm, "b2 + b2_bar > 0", p.b2 + p.b2_bar > 0.0);
  AddCheck(thm, "r + r_bar > 0", p.r + p.r_bar > 0.0);
  AddCheck(thm, "r + r_bar(1 - s_bar) > 0", p.r + p.r_bar * one_sb > 0.0);
  AddCheck(thm, "r + r_bar(1 - s_bar)^2 > 0",
           p.r + p.r_bar * one_sb * one_sb > 0.0);
  AddCheck(thm, "q + q_bar > 0", p.q + p.q_bar > 0.0);
  AddCheck(thm, "q + q_bar(1 - s) > 0", p.q + p.q_bar * one_s > 0.0);
  AddCheck(thm, "q + q_bar(1 - s)^2 > 0", p.q + p.q_bar * one_s * one_s > 0.0);
  AddCheck(thm, "q_T + q_bar_T >= 0", p.q_T + p.q_bar_T >= 0.0);
  AddCheck(thm, "q_T + q_bar_T(1 - s_T) >= 0", p.q_T + p.q_bar_T * one_sT >= 0.0);
  AddCheck(thm, "q_T + q_bar_T(1 - s_T)^2 >= 0",
           p.q_T + p.q_bar_T * one_sT * one_sT >= 0.0);

  report.domain_ok = AllPassed(dom);
  report.theorem1_ok = AllPassed(thm);

  auto& as = report.assumption1_checks;
  AddCheck(as, "b1 > 0", p.b1 > 0.0);
  bool du = false, dw = false, deta = false;
  try {
    const DerivedCoefficients d = Derive(p);
    du = d.riccati_u.D > 0.0;
    dw = d.riccati_w.D > 0.0;
    deta = d.riccati_eta.D > 0.0;
  } catch (const ZeroDenominatorError&) {
    // Leave the terminal-value checks failed.
  }
  AddCheck(as, "D^u > 0", du);
  AddCheck(as, "D^w > 0", dw);
  AddCheck(as, "D^eta > 0", deta);
  AddCheck(as, "E(xi) != 0", p.xi_mean != 0.0);
  report.assumption1_ok = report.theorem1_ok && AllPassed(as);

  for (const auto* list : {&dom, &thm, &as}) {
    for (const ValidationCheck& c : *list) {
      if (!c.passed) report.violations.push_back(c.name);
    }
  }
  return report;
}

DerivedCoefficients Derive(const ModelParams& p) {
  const double one_sb = 1.0 - p.s_bar;
  const double r_full = p.r + p.r_bar;
  const double r_mfg = p.r + p.r_bar * one_sb;
  const double r_mkv = p.r + p.r_bar * one_sb * one_sb;
  const double b2_total = p.b2 + p.b2_bar;
  if (r_full == 0.0) throw ZeroDenominatorError("r + r_bar");
  if (r_mfg == 0.0) throw ZeroDenominatorError("r + r_bar(1 - s_bar)");
  if (r_mkv == 0.0) throw ZeroDenominatorError("r + r_bar(1 - s_bar)^2");
  if (b2_total == 0.0) throw ZeroDenominatorError("b2 + b2_bar");

  DerivedCoefficients d;
  d.a = -p.b2 / r_full;
  d.b_mfg = -p.r_bar * p.s_bar * p.b2 / (r_full * r_mfg);
  d.c_mfg = -p.b2 / r_mfg;
  d.b_mkv = -(p.b2_bar - p.r_bar * p.s_bar * (p.s_bar - 2.0) * b2_total / r_mkv) /
            r_full;
  d.c_mkv = -b2_total / r_mkv;
  d.lambda = (p.b2 / b2_total) * (r_mkv / r_mfg);

  const double one_s = 1.0 - p.s;
  const double one_sT = 1.0 - p.s_T;
  const double big_b = b2_total * b2_total / r_mkv;

  d.riccati_u.A = -(p.b1 + 0.5 * p.b1_bar);
  d.riccati_u.B = big_b;
  d.riccati_u.C = d.lambda * (p.q + p.q_bar * one_s);
  d.riccati_u.D = d.lambda * (p.q_T + p.q_bar_T * one_sT);

  d.riccati_w.A = -(p.b1 + p.b1_bar);
  d.riccati_w.B = big_b;
  d.riccati_w.C = p.q + p.q_bar * one_s * one_s;
  d.riccati_w.D = p.q_T + p.q_bar_T * one_sT * one_sT;

  d.riccati_eta.A = -p.b1;
  d.riccati_eta.B = p.b2 * p.b2 / r_full;
  d.riccati_eta.C = p.q + p.q_bar;
  d.riccati_eta.D = p.q_T + p.q_bar_T;
  return d;
}

ModelParams ParseModelJson(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed model JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("model JSON must be an object");

  ModelParams params;
  for (size_t i = 0; i < kParameterNames.size(); ++i) {
    const std::string key(kParameterNames[i]);
    const auto it = doc.find(key);
    if (it == doc.end()) throw ParseError("missing key: " + key);
    if (!it->is_number()) throw ParseError("key is not a number: " + key);
    params.*kMembers[i] = it->get<double>();
  }
  for (const auto& item : doc.items()) {
    if (!IsParameterName(item.key())) {
      throw ParseError("unexpected key: " + item.key());
    }
  }
  return params;
}

ModelParams LoadModelFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseModelJson(buffer.str());
}

std::string ModelToJson(const ModelParams& params) {
  nlohmann::ordered_json doc;
  for (size_t i = 0; i < kParameterNames.size(); ++i) {
    doc[std::string(kParameterNames[i])] = params.*kMembers[i];
  }
  return doc.dump(2);
}

}  // namespace mfgpoa
