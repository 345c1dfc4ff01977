#pragma once

#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "densemimo/rng.hpp"

namespace densemimo::channel {

struct Constant {
  int n;
};
// N(lambda) = ceil(c * lambda^p)
struct Power {
  double c;
  double p;
};
// N(lambda) = ceil(c * lambda^p * ln(1+lambda)^q)
struct PowerLog {
  double c;
  double p;
  double q;
};

struct AntennaScalingLaw {
  std::variant<Constant, Power, PowerLog> form;

  static AntennaScalingLaw constant(int n) { return {Constant{n}}; }
  static AntennaScalingLaw power(double c, double p) { return {Power{c, p}}; }
  static AntennaScalingLaw power_log(double c, double p, double q) {
    return {PowerLog{c, p, q}};
  }
  std::string describe() const;
};

int antennas_at(const AntennaScalingLaw& law, double lambda);

enum class Regime { kSublinear, kLinear, kSuperlinear };
struct ScalingClass {
  Regime regime;
  double c = 0.0;  // linear coefficient when regime == kLinear
};
ScalingClass classify_scaling(const AntennaScalingLaw& law);

std::vector<double> sample_exp_gains(std::size_t count, rng::Stream& stream);

// Gamma(n_t, 1): MRT beamforming gain.
double sample_miso_gain(int n_t, rng::Stream& stream);

// Largest eigenvalue of H H^*, H: n_r x n_t i.i.d. CN(0,1). Direct Hermitian
// eigensolve for min(n_t, n_r) <= 4, else power iteration on the Gram matrix
// (relative-change tolerance 1e-10, 1e4 iteration cap, restart on stagnation,
// start vector drawn from the stream).
double sample_mimo_max_eig(int n_t, int n_r, rng::Stream& stream);

// Exposed separately so the two routes can be compared as oracles.
double max_eig_direct(const Eigen::MatrixXcd& h);
double max_eig_power_iteration(const Eigen::MatrixXcd& h, rng::Stream& stream,
                               double rel_tol = 1e-10, int max_iters = 10000);

// H with i.i.d. CN(0,1) entries: re/im each N(0, 1/2), row-major entry order.
Eigen::MatrixXcd sample_gaussian_matrix(int n_r, int n_t, rng::Stream& stream);

}  // namespace densemimo::channel
