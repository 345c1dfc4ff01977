#include "densemimo/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "densemimo/errors.hpp"

namespace densemimo::channel {

std::string AntennaScalingLaw::describe() const {
  std::ostringstream os;
  if (const auto* c = std::get_if<Constant>(&form))
    os << "constant{n=" << c->n << "}";
  else if (const auto* p = std::get_if<Power>(&form))
    os << "power{c=" << p->c << ",p=" << p->p << "}";
  else if (const auto* pl = std::get_if<PowerLog>(&form))
    os << "powerlog{c=" << pl->c << ",p=" << pl->p << ",q=" << pl->q << "}";
  return os.str();
}

int antennas_at(const AntennaScalingLaw& law, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("antennas_at: lambda must be > 0");
  double v = 0.0;
  if (const auto* c = std::get_if<Constant>(&law.form)) {
    if (c->n < 1) throw DomainError("antennas_at: constant law needs n >= 1");
    return c->n;
  } else if (const auto* p = std::get_if<Power>(&law.form)) {
    if (!(p->c > 0.0) || !(p->p > 0.0))
      throw DomainError("antennas_at: power law needs c, p > 0");
    v = p->c * std::pow(lambda, p->p);
  } else {
    const auto& pl = std::get<PowerLog>(law.form);
    if (!(pl.c > 0.0) || !(pl.p > 0.0) || pl.q < 0.0)
      throw DomainError("antennas_at: powerlog law needs c, p > 0 and q >= 0");
    v = pl.c * std::pow(lambda, pl.p) * std::pow(std::log1p(lambda), pl.q);
  }
  const double n = std::ceil(v);
  return n < 1.0 ? 1 : static_cast<int>(n);
}

ScalingClass classify_scaling(const AntennaScalingLaw& law) {
  if (std::holds_alternative<Constant>(law.form))
    return {Regime::kSublinear, 0.0};
  if (const auto* p = std::get_if<Power>(&law.form)) {
    if (p->p < 1.0) return {Regime::kSublinear, 0.0};
    if (p->p == 1.0) return {Regime::kLinear, p->c};
    return {Regime::kSuperlinear, 0.0};
  }
  const auto& pl = std::get<PowerLog>(law.form);
  if (pl.p < 1.0) return {Regime::kSublinear, 0.0};
  if (pl.p == 1.0 && pl.q == 0.0) return {Regime::kLinear, pl.c};
  return {Regime::kSuperlinear, 0.0};
}

std::vector<double> sample_exp_gains(std::size_t count, rng::Stream& stream) {
  std::vector<double> g(count);
  for (double& x : g) x = stream.exp1();
  return g;
}

double sample_miso_gain(int n_t, rng::Stream& stream) {
  if (n_t < 1) throw DomainError("sample_miso_gain: n_t must be >= 1");
  return stream.gamma_int_shape(n_t);
}

Eigen::MatrixXcd sample_gaussian_matrix(int n_r, int n_t, rng::Stream& stream) {
  Eigen::MatrixXcd h(n_r, n_t);
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_t; ++j) {
      const auto [re, im] = stream.cnormal();
      h(i, j) = std::complex<double>(re, im);
    }
  return h;
}

double max_eig_direct(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd gram = h * h.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double max_eig_power_iteration(const Eigen::MatrixXcd& h, rng::Stream& stream,
                               double rel_tol, int max_iters) {
  const Eigen::Index n = h.rows();
  const Eigen::MatrixXcd gram = h * h.adjoint();
  if (n == 1) return gram(0, 0).real();

  auto draw_start = [&] {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto [re, im] = stream.cnormal();
      v(i) = std::complex<double>(re, im);
    }
    v.normalize();
    return v;
  };

  Eigen::VectorXcd v = draw_start();
  double mu_prev = 0.0;
  double best_change = std::numeric_limits<double>::infinity();
  int since_improvement = 0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXcd w = gram * v;
    const double mu = w.real().dot(v.real()) + w.imag().dot(v.imag());
    const double nw = w.norm();
    if (nw == 0.0) {  // started orthogonal to everything nonzero
      v = draw_start();
      continue;
    }
    v = w / nw;
    const double change = std::abs(mu - mu_prev);
    mu_prev = mu;
    if (it > 0 && change <= rel_tol * std::abs(mu)) return mu;
    // deflation-free restart: stagnating without converging
    if (change < best_change) {
      best_change = change;
      since_improvement = 0;
    } else if (++since_improvement >= 200) {
      v = draw_start();
      best_change = std::numeric_limits<double>::infinity();
      since_improvement = 0;
    }
  }
  return mu_prev;
}

double sample_mimo_max_eig(int n_t, int n_r, rng::Stream& stream) {
  if (n_t < 1 || n_r < 1)
    throw DomainError("sample_mimo_max_eig: antenna counts must be >= 1");
  if (n_r > n_t)
    throw DomainError("sample_mimo_max_eig: requires n_r <= n_t");
  const Eigen::MatrixXcd h = sample_gaussian_matrix(n_r, n_t, stream);
  if (std::min(n_t, n_r) <= 4) return max_eig_direct(h);
  return max_eig_power_iteration(h, stream);
}

}  // namespace densemimo::channel
