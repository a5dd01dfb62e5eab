#pragma once

#include <random>

#include "mfgpoa/model.h"

namespace mfgpoa::testing {

// Coefficients uniform on [0.1, 3], interaction scalings on [0, 0.9].
inline ModelParams RandomParams(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.1, 3.0);
  std::uniform_real_distribution<double> scaling(0.0, 0.9);
  ModelParams p;
  p.b1 = coef(rng);
  p.b1_bar = coef(rng);
  p.b2 = coef(rng);
  p.b2_bar = coef(rng);
  p.sigma = coef(rng);
  p.q = coef(rng);
  p.q_bar = coef(rng);
  p.s = scaling(rng);
  p.r = coef(rng);
  p.r_bar = coef(rng);
  p.s_bar = scaling(rng);
  p.q_T = coef(rng);
  p.q_bar_T = coef(rng);
  p.s_T = scaling(rng);
  p.xi_mean = coef(rng);
  p.xi_var = coef(rng);
  p.T = coef(rng);
  return p;
}

}  // namespace mfgpoa::testing
