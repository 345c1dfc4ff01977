#include "densemimo/metrics.hpp"

#include <cmath>
#include <cstddef>

#include "densemimo/errors.hpp"
#include "densemimo/stats.hpp"

namespace densemimo::metrics {

double sinr(const pathloss::PathLossModel& model,
            const geometry::NetworkRealization& real, const ChannelDraw& draw,
            double noise) {
  if (real.empty()) throw NoCoverageError("no serving base station");
  if (noise < 0.0) throw DomainError("noise must be non-negative");
  const std::size_t n = real.distance.size();
  if (draw.interferer_gains.size() + 1 != n)
    throw DomainError("gain count does not match realization");

  const double numerator =
      pathloss::evaluate(model, real.distance[0]) * draw.serving_gain;

  // Points are sorted by distance, so this accumulates strongest-first.
  stats::KahanSum acc;
  for (std::size_t i = 1; i < n; ++i)
    acc.add(pathloss::evaluate(model, real.distance[i]) *
            draw.interferer_gains[i - 1]);
  const double denominator = acc.sum + noise;
  if (denominator <= 0.0)
    throw DegenerateDenominatorError("interference + noise is zero");
  return numerator / denominator;
}

double ase(double lambda, double sinr) {
  if (lambda < 0.0) throw DomainError("lambda must be non-negative");
  if (sinr < 0.0) throw DomainError("sinr must be non-negative");
  return lambda * std::log2(1.0 + sinr);
}

double normalized_sinr(double lambda, int n_t, double sinr) {
  if (n_t < 1) throw DomainError("n_t must be positive");
  return lambda * sinr / static_cast<double>(n_t);
}

double noise_db_to_linear(double noise_db) {
  return std::pow(10.0, noise_db / 10.0);
}

}  // namespace densemimo::metrics
