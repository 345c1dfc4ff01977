#pragma once

#include <string>

#include "densemimo/channel.hpp"
#include "densemimo/pathloss.hpp"

namespace densemimo::asymptotics {

// Symbolic growth rate coeff * lambda^lambda_pow * (ln lambda)^log_pow
// * (ln ln lambda)^loglog_pow.  Exponents are compared exactly, so regimes
// like "lambda" vs "lambda log lambda" never collide on a finite grid.
struct Scale {
  double coeff = 1.0;
  double lambda_pow = 0.0;
  double log_pow = 0.0;
  double loglog_pow = 0.0;

  double evaluate(double lambda) const;
  std::string describe() const;
};

Scale law_scale(const channel::AntennaScalingLaw& law);

// Limit of N_r(lambda)/N_t(lambda); throws DomainError if N_r outgrows N_t.
double y_ratio(const channel::AntennaScalingLaw& t_law,
               const channel::AntennaScalingLaw& r_law);

// Theorem 1: lim lambda*SINR/N_t = L(0)/(2*pi*gamma).
double miso_sinr_limit(const pathloss::PathLossModel& model);

// Corollary 1: MISO limit times (1+sqrt(y))^2, y = lim N_r/N_t in [0,1].
double mimo_sinr_limit(const pathloss::PathLossModel& model, double y);

enum class AseRegime { kAntennaScale, kLinear, kLogarithmic };

struct AsePrediction {
  AseRegime regime;
  Scale scale;
  channel::AntennaScalingLaw law;

  // Reference curve for plots: N_t(lambda), lambda, or
  // lambda*log2(1+N_t(lambda)/lambda) depending on regime.
  double reference(double lambda) const;
  std::string describe() const;
};

// Theorem 2 trichotomy keyed off N_t(lambda)/lambda.
AsePrediction ase_regime(const channel::AntennaScalingLaw& t_law);

struct SinrBounds {
  Scale lower;  // N_t(lambda)/lambda
  Scale upper;  // N_t(lambda)*N_r(lambda)/lambda
};

// Corollary 2 bracket on the mean-SINR scale.
SinrBounds average_sinr_bounds(const channel::AntennaScalingLaw& t_law,
                               const channel::AntennaScalingLaw& r_law);

enum class LimitKind { kZero, kFinite, kInfinite };

struct AsymptoticPrediction {
  LimitKind sinr_limit_kind = LimitKind::kZero;
  double sinr_limit = 0.0;  // valid when kFinite, includes the MIMO factor
  Scale sinr_scale;         // N_t(lambda)/lambda
  double mimo_factor = 1.0;
  AsePrediction ase;
  SinrBounds bounds;
};

AsymptoticPrediction predict(const pathloss::PathLossModel& model,
                             const channel::AntennaScalingLaw& t_law,
                             const channel::AntennaScalingLaw& r_law);

}  // namespace densemimo::asymptotics
