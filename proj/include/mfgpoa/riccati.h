#pragma once

#include <string_view>

namespace mfgpoa {

// Constant-coefficient scalar Riccati terminal-value problem
//
//   rho'(t) - B rho(t)^2 - 2 A rho(t) + C = 0,   rho(T) = D.
struct RiccatiSpec {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
};

enum class RiccatiRegime {
  kFull,     // B != 0, closed form in terms of the characteristic roots.
  kLinearA,  // B ~ 0, A != 0: exponential-linear limit.
  kLinear0,  // B ~ 0, A ~ 0: affine limit.
};

std::string_view RegimeName(RiccatiRegime regime);

// Closed-form evaluator for one scalar Riccati solution on [0, T].
//
// In the full regime every exponential is written as exp(-(d+ - d-)(T - t))
// with d+ > d-, so evaluation never overflows regardless of parameter scale.
class RiccatiEval {
 public:
  const RiccatiSpec& spec() const { return spec_; }
  double horizon() const { return horizon_; }
  RiccatiRegime regime() const { return regime_; }
  // Characteristic roots -A +/- sqrt(A^2 + BC); zero outside the full regime.
  double delta_plus() const { return delta_plus_; }
  double delta_minus() const { return delta_minus_; }

  // Value at t in [0, T]. Throws OutOfDomainError otherwise.
  double Evaluate(double t) const;
  // Exact time derivative at t in [0, T].
  double Derivative(double t) const;
  // Composite Simpson approximation of the integral over [t0, t1] with n
  // (odd, >= 3) sample points.
  double Integrate(double t0, double t1, int n) const;

  // B D^2 + 2 A D - C: sign of the derivative everywhere on [0, T).
  double Drift() const;

 private:
  friend RiccatiEval SolveRiccati(const RiccatiSpec& spec, double horizon);

  RiccatiEval(const RiccatiSpec& spec, double horizon, RiccatiRegime regime,
              double delta_plus, double delta_minus)
      : spec_(spec),
        horizon_(horizon),
        regime_(regime),
        delta_plus_(delta_plus),
        delta_minus_(delta_minus) {}

  void CheckDomain(double t) const;

  RiccatiSpec spec_;
  double horizon_;
  RiccatiRegime regime_;
  double delta_plus_;
  double delta_minus_;
};

// Selects the regime and precomputes the characteristic roots. |B| below
// 1e-12 * max(1, |A|, |C|, |D|) is treated as B = 0; |A| below
// 1e-12 * max(1, |C|, |D|) then selects the affine limit.
//
// Throws OutOfDomainError if horizon <= 0 and IllPosedError if the full regime
// is selected but BD >= 0 and BC > 0 do not both hold.
RiccatiEval SolveRiccati(const RiccatiSpec& spec, double horizon);

}  // namespace mfgpoa
