#pragma once

#include <span>
#include <vector>

namespace mfgpoa {

// Composite Simpson rule over uniformly spaced samples. The sample count must
// be odd and >= 3; throws BadGridError otherwise.
double Simpson(std::span<const double> f, double h);

// Running integral I_k = int_{t_0}^{t_k} f on a uniform grid with an odd
// number of samples. Even indices are exact Simpson prefixes; odd indices add
// the third-order-exact half-panel rule h/12 (5 f_{k-1} + 8 f_k - f_{k+1}) to
// the preceding even prefix.
std::vector<double> CumulativeSimpson(std::span<const double> f, double h);

}  // namespace mfgpoa
