#include "densemimo/rng.hpp"

#include <cmath>
#include <numbers>

namespace densemimo::rng {

uint64_t splitmix64_next(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Stream derive(uint64_t master_seed, std::initializer_list<uint64_t> keys) {
  uint64_t h = master_seed;
  (void)splitmix64_next(h);  // decouple from raw seed
  for (uint64_t k : keys) {
    h ^= k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    uint64_t tmp = h;
    h = splitmix64_next(tmp);
  }
  uint64_t st = h;
  uint64_t s0 = splitmix64_next(st);
  uint64_t s1 = splitmix64_next(st);
  uint64_t s2 = splitmix64_next(st);
  uint64_t s3 = splitmix64_next(st);
  if ((s0 | s1 | s2 | s3) == 0) s0 = 1;  // xoshiro forbids the all-zero state
  return Stream(s0, s1, s2, s3);
}

Stream trial_stream(uint64_t master_seed, uint64_t lambda_index,
                    uint64_t trial_index, Purpose purpose, uint64_t law_index) {
  return derive(master_seed, {lambda_index, trial_index,
                              static_cast<uint64_t>(purpose), law_index});
}

double Stream::exp1() { return -std::log(1.0 - u01()); }

double Stream::normal() {
  const double u = u01();
  const double v = u01();
  return std::sqrt(-2.0 * std::log(1.0 - u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

std::pair<double, double> Stream::cnormal() {
  const double u = u01();
  const double v = u01();
  const double r = std::sqrt(-std::log(1.0 - u));
  return {r * std::cos(2.0 * std::numbers::pi * v),
          r * std::sin(2.0 * std::numbers::pi * v)};
}

double Stream::gamma_int_shape(int a) {
  // Marsaglia & Tsang (2000); exact for shape >= 1.
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, vv;
    do {
      x = normal();
      vv = 1.0 + c * x;
    } while (vv <= 0.0);
    vv = vv * vv * vv;
    const double u = u01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * vv;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - vv + std::log(vv)))
      return d * vv;
  }
}

long Stream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) {
    // Knuth product-of-uniforms inversion.
    const double limit = std::exp(-mean);
    long k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= u01();
    } while (p > limit);
    return k - 1;
  }
  // Hormann (1993) PTRS transformed rejection.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = u01() - 0.5;
    double v = u01();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * std::log(mean) - mean - std::lgamma(k + 1.0))
      return static_cast<long>(k);
  }
}

}  // namespace densemimo::rng
