#pragma once

#include <cstddef>

// Hot inner loops for the fused trial pipeline. These live in a separate
// translation unit compiled with -ffast-math so the exp/log/pow calls lower
// to their vector (libmvec) forms. Every function is a pure mapping from
// inputs to outputs, so results are identical for a given build regardless
// of worker count or call site.
namespace densemimo::kernels {

inline constexpr std::size_t kBlock = 4096;

// out[i] = -log(1 - u[i]); u in [0,1) -> Exp(1).
void neglog1m(const double* u, double* out, std::size_t n);

// out[i] = exp(-eta * s[i]^half_kappa) with s = r^2 (stretched exponential
// without the square root).
void eval_se_sq(const double* s, double* out, std::size_t n, double eta,
                double half_kappa);

// out[i] = l0 * min(1, (s[i]/rc_sq)^(-half_eta)) with s = r^2.
void eval_bss_sq(const double* s, double* out, std::size_t n, double l0,
                 double rc_sq, double half_eta);

// Dot product with a fixed 8-lane accumulation pattern.
double dot_blocked(const double* a, const double* b, std::size_t n);

}  // namespace densemimo::kernels
