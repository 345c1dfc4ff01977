#pragma once

#include <vector>

#include "densemimo/geometry.hpp"
#include "densemimo/pathloss.hpp"

namespace densemimo::metrics {

struct ChannelDraw {
  double serving_gain = 0.0;                // phi_0^2 (MIMO) or Gamma gain (MISO)
  std::vector<double> interferer_gains;     // g_i, one per non-serving point
  int n_t = 1;
  int n_r = 1;
};

struct TrialResult {
  double r0 = 0.0;
  double serving_gain = 0.0;
  double interference = 0.0;  // sum over interferers of L(r_i) g_i
  double noise = 0.0;         // sigma^2, linear
  double sinr = 0.0;
  double ase = 0.0;
  double normalized_sinr = 0.0;  // lambda * sinr / n_t
  int n_t = 1;
  int n_r = 1;
  double lambda = 0.0;
  bool censored = false;
};

// Eq. (2)-(3): L(r0) * serving_gain / (sum_i L(r_i) g_i + sigma^2).
// Interference accumulates in ascending-distance order with compensated
// (Kahan) summation.
double sinr(const pathloss::PathLossModel& model,
            const geometry::NetworkRealization& real, const ChannelDraw& draw,
            double noise);

// Eq. (4): lambda * log2(1 + sinr).
double ase(double lambda, double sinr);

double normalized_sinr(double lambda, int n_t, double sinr);

double noise_db_to_linear(double noise_db);

}  // namespace densemimo::metrics
