#include "densemimo/batch_kernels.hpp"

#include <cmath>

namespace densemimo::kernels {

void neglog1m(const double* u, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = -std::log(1.0 - u[i]);
}

void eval_se_sq(const double* s, double* out, std::size_t n, double eta,
                double half_kappa) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::exp(-eta * std::pow(s[i], half_kappa));
}

void eval_bss_sq(const double* s, double* out, std::size_t n, double l0,
                 double rc_sq, double half_eta) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::pow(s[i] / rc_sq, -half_eta);
    out[i] = l0 * (p < 1.0 ? p : 1.0);
  }
}

double dot_blocked(const double* a, const double* b, std::size_t n) {
  double lane[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8)
    for (std::size_t j = 0; j < 8; ++j) lane[j] += a[i + j] * b[i + j];
  for (; i < n; ++i) lane[i & 7] += a[i] * b[i];
  const double s01 = lane[0] + lane[1];
  const double s23 = lane[2] + lane[3];
  const double s45 = lane[4] + lane[5];
  const double s67 = lane[6] + lane[7];
  return (s01 + s23) + (s45 + s67);
}

}  // namespace densemimo::kernels
