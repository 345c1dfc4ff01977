#pragma once

#include <cstddef>
#include <vector>

#include "densemimo/pathloss.hpp"
#include "densemimo/rng.hpp"

namespace densemimo::geometry {

enum class Shape { kDisc, kSquare };

// Centered at the origin: disc{radius} or square{half-side}.
struct Window {
  Shape shape = Shape::kSquare;
  double size = 10.0;  // radius or half-side

  double area() const;
  // True when the window geometrically contains a disc of the given radius.
  bool contains_disc(double radius) const;
};

struct NetworkRealization {
  std::vector<double> distance;  // ascending
  std::vector<double> angle;     // radians, aligned with distance
  double lambda = 0.0;
  Window window;

  std::size_t count() const { return distance.size(); }
  bool empty() const { return distance.empty(); }
};

// HPPP of intensity lambda on the window, sorted ascending by distance.
// Disc windows use the exact radial construction: squared distances are the
// running sum of Exp(1)/(lambda*pi) spacings (sorted by construction), then
// one angle per point, all distances drawn before all angles. Square windows
// draw Poisson(lambda*area) Cartesian points and sort.
NetworkRealization sample_ppp(double lambda, const Window& window,
                              rng::Stream& stream);

double serving_distance(const NetworkRealization& real);

// Smallest radius R with tail integral int_R^inf r L dr <= eps * gamma.
// eps >= 1 returns 0; compact-support models return their support radius.
double truncation_radius(const pathloss::PathLossModel& model, double lambda,
                         double eps);

}  // namespace densemimo::geometry
