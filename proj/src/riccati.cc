#include "mfgpoa/riccati.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mfgpoa/errors.h"
#include "mfgpoa/quadrature.h"

namespace mfgpoa {

namespace {

constexpr double kDegenerateTol = 1e-12;

double MaxAbs(std::initializer_list<double> values) {
  double m = 1.0;
  for (const double v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

std::string_view RegimeName(RiccatiRegime regime) {
  switch (regime) {
    case RiccatiRegime::kFull:
      return "FULL";
    case RiccatiRegime::kLinearA:
      return "LINEAR_A";
    case RiccatiRegime::kLinear0:
      return "LINEAR_0";
  }
  return "?";
}

RiccatiEval SolveRiccati(const RiccatiSpec& spec, double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw OutOfDomainError("Riccati horizon must be positive");
  }
  const auto [A, B, C, D] = spec;
  if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C) ||
      !std::isfinite(D)) {
    throw IllPosedError("Riccati coefficients must be finite");
  }
  if (std::abs(B) < kDegenerateTol * MaxAbs({A, C, D})) {
    const RiccatiRegime regime =
        std::abs(A) < kDegenerateTol * MaxAbs({C, D}) ? RiccatiRegime::kLinear0
                                                      : RiccatiRegime::kLinearA;
    return RiccatiEval(spec, horizon, regime, 0.0, 0.0);
  }
  if (!(B * D >= 0.0) || !(B * C > 0.0)) {
    throw IllPosedError("Riccati spec violates BD >= 0, BC > 0 (A=" +
                        std::to_string(A) + ", B=" + std::to_string(B) +
                        ", C=" + std::to_string(C) + ", D=" +
                        std::to_string(D) + ")");
  }
  // The roots multiply to -BC; take the large-magnitude root directly and
  // recover the other from the product to avoid cancellation.
  const double root = std::sqrt(A * A + B * C);
  double delta_plus;
  double delta_minus;
  if (A <= 0.0) {
    delta_plus = -A + root;
    delta_minus = -B * C / delta_plus;
  } else {
    delta_minus = -A - root;
    delta_plus = -B * C / delta_minus;
  }
  return RiccatiEval(spec, horizon, RiccatiRegime::kFull, delta_plus,
                     delta_minus);
}

void RiccatiEval::CheckDomain(double t) const {
  if (!(t >= 0.0 && t <= horizon_)) {
    throw OutOfDomainError("t = " + std::to_string(t) + " outside [0, " +
                           std::to_string(horizon_) + "]");
  }
}

double RiccatiEval::Drift() const {
  return spec_.B * spec_.D * spec_.D + 2.0 * spec_.A * spec_.D - spec_.C;
}

double RiccatiEval::Evaluate(double t) const {
  CheckDomain(t);
  if (t == horizon_) return spec_.D;
  const auto [A, B, C, D] = spec_;
  const double tau = horizon_ - t;
  switch (regime_) {
    case RiccatiRegime::kFull: {
      const double gap = delta_plus_ - delta_minus_;
      const double e = std::exp(-gap * tau);
      const double one_minus_e = -std::expm1(-gap * tau);
      const double num = C * one_minus_e + D * (delta_plus_ - delta_minus_ * e);
      const double den = B * D * one_minus_e + delta_plus_ * e - delta_minus_;
      return num / den;
    }
    case RiccatiRegime::kLinearA: {
      // D e^{-2A tau} + C (1 - e^{-2A tau}) / (2A)
      const double growth = std::exp(-2.0 * A * tau);
      return D * growth - C * std::expm1(-2.0 * A * tau) / (2.0 * A);
    }
    case RiccatiRegime::kLinear0:
      return D + C * tau;
  }
  return D;
}

double RiccatiEval::Derivative(double t) const {
  CheckDomain(t);
  const auto [A, B, C, D] = spec_;
  switch (regime_) {
    case RiccatiRegime::kFull: {
      const double gap = delta_plus_ - delta_minus_;
      const double tau = horizon_ - t;
      const double e = std::exp(-gap * tau);
      const double one_minus_e = -std::expm1(-gap * tau);
      const double den = B * D * one_minus_e + delta_plus_ * e - delta_minus_;
      return Drift() * gap * gap * e / (den * den);
    }
    case RiccatiRegime::kLinearA:
      return 2.0 * A * Evaluate(t) - C;
    case RiccatiRegime::kLinear0:
      return -C;
  }
  return 0.0;
}

double RiccatiEval::Integrate(double t0, double t1, int n) const {
  CheckDomain(t0);
  CheckDomain(t1);
  if (t1 < t0) throw OutOfDomainError("Integrate needs t0 <= t1");
  if (n < 3 || n % 2 == 0) {
    throw BadGridError("Integrate needs an odd point count >= 3");
  }
  if (t0 == t1) return 0.0;
  const double h = (t1 - t0) / (n - 1);
  std::vector<double> f(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    f[static_cast<size_t>(k)] =
        Evaluate(k == n - 1 ? t1 : std::min(t1, t0 + k * h));
  }
  return Simpson(f, h);
}

}  // namespace mfgpoa
