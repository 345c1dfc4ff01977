#include "densemimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "densemimo/errors.hpp"
#include "densemimo/quadrature.hpp"

namespace densemimo::geometry {

namespace {
constexpr double kPi = std::numbers::pi;
}

double Window::area() const {
  return shape == Shape::kDisc ? kPi * size * size : 4.0 * size * size;
}

bool Window::contains_disc(double radius) const {
  return size >= radius;  // both shapes contain disc(r) iff size >= r
}

NetworkRealization sample_ppp(double lambda, const Window& window,
                              rng::Stream& stream) {
  if (lambda < 0.0) throw DomainError("sample_ppp: negative density");
  NetworkRealization real;
  real.lambda = lambda;
  real.window = window;
  if (lambda == 0.0) return real;

  if (window.shape == Shape::kDisc) {
    const double inv_rate = 1.0 / (lambda * kPi);
    const double s_max = window.size * window.size;
    double s = 0.0;
    for (;;) {
      s += stream.exp1() * inv_rate;
      if (s > s_max) break;
      real.distance.push_back(std::sqrt(s));
    }
    real.angle.reserve(real.distance.size());
    for (std::size_t i = 0; i < real.distance.size(); ++i)
      real.angle.push_back(2.0 * kPi * stream.u01());
    return real;
  }

  const long n = stream.poisson(lambda * window.area());
  std::vector<std::pair<double, double>> pts;  // (distance, angle)
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double x = window.size * (2.0 * stream.u01() - 1.0);
    const double y = window.size * (2.0 * stream.u01() - 1.0);
    pts.emplace_back(std::hypot(x, y), std::atan2(y, x));
  }
  std::sort(pts.begin(), pts.end());
  real.distance.reserve(pts.size());
  real.angle.reserve(pts.size());
  for (const auto& [d, a] : pts) {
    real.distance.push_back(d);
    real.angle.push_back(a);
  }
  return real;
}

double serving_distance(const NetworkRealization& real) {
  if (real.empty())
    throw NoCoverageError("serving_distance: empty realization");
  return real.distance.front();
}

double truncation_radius(const pathloss::PathLossModel& model, double lambda,
                         double eps) {
  (void)lambda;  // both sides of the criterion carry the same 2*pi*lambda factor
  if (!(eps > 0.0))
    throw DomainError("truncation_radius: eps must be positive");
  if (eps >= 1.0) return 0.0;
  if (const auto sup = model.support_radius()) return *sup;

  const double gamma = pathloss::gamma_integral(model);
  const double budget = eps * gamma;
  const auto tail = [&](double R) {
    return quad::integrate(
               [&](double r) { return r * pathloss::evaluate(model, r); }, R,
               std::numeric_limits<double>::infinity(), model.knots(), 1e-8)
        .value;
  };

  const auto grid = pathloss::check_grid();  // {0} U geometric 1e-6..1e4
  if (tail(grid.back()) > budget)
    throw DivergenceError("truncation_radius: tolerance unreachable on grid",
                          grid.back());
  // tail is non-increasing in R: binary search the first grid radius within budget
  std::size_t lo = 0, hi = grid.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (tail(grid[mid]) <= budget)
      hi = mid;
    else
      lo = mid + 1;
  }
  return grid[lo];
}

}  // namespace densemimo::geometry
