#include "mfgpoa/quadrature.h"

#include "mfgpoa/errors.h"

namespace mfgpoa {

namespace {

void CheckSamples(size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw BadGridError("Simpson needs an odd sample count >= 3, got " +
                       std::to_string(n));
  }
}

}  // namespace

double Simpson(std::span<const double> f, double h) {
  CheckSamples(f.size());
  double odd = 0.0;
  double even = 0.0;
  for (size_t k = 1; k + 1 < f.size(); k += 2) odd += f[k];
  for (size_t k = 2; k + 1 < f.size(); k += 2) even += f[k];
  return h / 3.0 * (f.front() + 4.0 * odd + 2.0 * even + f.back());
}

std::vector<double> CumulativeSimpson(std::span<const double> f, double h) {
  CheckSamples(f.size());
  std::vector<double> out(f.size(), 0.0);
  for (size_t k = 2; k < f.size(); k += 2) {
    out[k] = out[k - 2] + h / 3.0 * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
    out[k - 1] =
        out[k - 2] + h / 12.0 * (5.0 * f[k - 2] + 8.0 * f[k - 1] - f[k]);
  }
  return out;
}

}  // namespace mfgpoa
