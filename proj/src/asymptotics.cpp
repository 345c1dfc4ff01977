#include "densemimo/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "densemimo/errors.hpp"

namespace densemimo::asymptotics {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

double continuous_law_value(const channel::AntennaScalingLaw& law,
                            double lambda) {
  return std::visit(
      Overload{[](const channel::Constant& f) {
                 return static_cast<double>(f.n);
               },
               [&](const channel::Power& f) {
                 return f.c * std::pow(lambda, f.p);
               },
               [&](const channel::PowerLog& f) {
                 return f.c * std::pow(lambda, f.p) *
                        std::pow(std::log1p(lambda), f.q);
               }},
      law.form);
}

// Lexicographic comparison of growth orders, ignoring coefficients.
int order_compare(const Scale& a, const Scale& b) {
  if (a.lambda_pow != b.lambda_pow) return a.lambda_pow < b.lambda_pow ? -1 : 1;
  if (a.log_pow != b.log_pow) return a.log_pow < b.log_pow ? -1 : 1;
  if (a.loglog_pow != b.loglog_pow) return a.loglog_pow < b.loglog_pow ? -1 : 1;
  return 0;
}

void append_power(std::ostringstream& out, const char* base, double p) {
  if (p == 0.0) return;
  out << " * " << base;
  if (p != 1.0) out << "^" << p;
}

}  // namespace

double Scale::evaluate(double lambda) const {
  if (lambda <= 0.0) throw DomainError("lambda must be positive");
  double v = coeff * std::pow(lambda, lambda_pow);
  if (log_pow != 0.0) {
    const double l = std::log(lambda);
    v *= l > 0.0 ? std::pow(l, log_pow) : 0.0;
  }
  if (loglog_pow != 0.0) {
    const double l = std::log(lambda);
    const double ll = l > 1.0 ? std::log(l) : 0.0;
    v *= ll > 0.0 ? std::pow(ll, loglog_pow) : 0.0;
  }
  return v;
}

std::string Scale::describe() const {
  std::ostringstream out;
  out << coeff;
  append_power(out, "lambda", lambda_pow);
  append_power(out, "ln(lambda)", log_pow);
  append_power(out, "ln(ln(lambda))", loglog_pow);
  return out.str();
}

Scale law_scale(const channel::AntennaScalingLaw& law) {
  return std::visit(
      Overload{[](const channel::Constant& f) {
                 return Scale{static_cast<double>(f.n), 0.0, 0.0, 0.0};
               },
               [](const channel::Power& f) {
                 return Scale{f.c, f.p, 0.0, 0.0};
               },
               [](const channel::PowerLog& f) {
                 return Scale{f.c, f.p, f.q, 0.0};
               }},
      law.form);
}

double y_ratio(const channel::AntennaScalingLaw& t_law,
               const channel::AntennaScalingLaw& r_law) {
  const Scale t = law_scale(t_law);
  const Scale r = law_scale(r_law);
  const int cmp = order_compare(r, t);
  if (cmp < 0) return 0.0;
  if (cmp > 0) throw DomainError("N_r law outgrows N_t law");
  const double y = r.coeff / t.coeff;
  if (y > 1.0) throw DomainError("N_r law exceeds N_t law");
  return y;
}

double miso_sinr_limit(const pathloss::PathLossModel& model) {
  const double l0 = pathloss::evaluate(model, 0.0);
  const double gamma = pathloss::gamma_integral(model);
  if (gamma <= 0.0) throw DomainError("gamma must be positive");
  return l0 / (2.0 * std::numbers::pi * gamma);
}

double mimo_sinr_limit(const pathloss::PathLossModel& model, double y) {
  if (y < 0.0 || y > 1.0) throw DomainError("y must lie in [0,1]");
  const double f = 1.0 + std::sqrt(y);
  return miso_sinr_limit(model) * f * f;
}

double AsePrediction::reference(double lambda) const {
  switch (regime) {
    case AseRegime::kAntennaScale:
      return continuous_law_value(law, lambda);
    case AseRegime::kLinear:
      return lambda;
    case AseRegime::kLogarithmic:
      return lambda *
             std::log2(1.0 + continuous_law_value(law, lambda) / lambda);
  }
  return 0.0;  // unreachable
}

std::string AsePrediction::describe() const {
  switch (regime) {
    case AseRegime::kAntennaScale:
      return "N_t(lambda)";
    case AseRegime::kLinear:
      return "lambda";
    case AseRegime::kLogarithmic:
      return "lambda*log(1+N_t(lambda)/lambda)";
  }
  return "";  // unreachable
}

AsePrediction ase_regime(const channel::AntennaScalingLaw& t_law) {
  const channel::ScalingClass cls = channel::classify_scaling(t_law);
  const Scale nt = law_scale(t_law);
  AsePrediction out;
  out.law = t_law;
  switch (cls.regime) {
    case channel::Regime::kSublinear:
      out.regime = AseRegime::kAntennaScale;
      out.scale = nt;
      return out;
    case channel::Regime::kLinear:
      out.regime = AseRegime::kLinear;
      out.scale = {1.0, 1.0, 0.0, 0.0};
      return out;
    case channel::Regime::kSuperlinear:
      out.regime = AseRegime::kLogarithmic;
      // log(1 + N_t/lambda): a power gap gives (p-1)*ln(lambda), a pure
      // log-factor gap gives q*ln(ln(lambda)).
      if (nt.lambda_pow > 1.0)
        out.scale = {nt.lambda_pow - 1.0, 1.0, 1.0, 0.0};
      else
        out.scale = {nt.log_pow, 1.0, 0.0, 1.0};
      return out;
  }
  throw DomainError("unknown regime");
}

SinrBounds average_sinr_bounds(const channel::AntennaScalingLaw& t_law,
                               const channel::AntennaScalingLaw& r_law) {
  const Scale t = law_scale(t_law);
  const Scale r = law_scale(r_law);
  if (order_compare(r, t) > 0 ||
      (order_compare(r, t) == 0 && r.coeff > t.coeff))
    throw DomainError("N_r law exceeds N_t law");
  SinrBounds out;
  out.lower = {t.coeff, t.lambda_pow - 1.0, t.log_pow, t.loglog_pow};
  out.upper = {t.coeff * r.coeff, t.lambda_pow + r.lambda_pow - 1.0,
               t.log_pow + r.log_pow, t.loglog_pow + r.loglog_pow};
  return out;
}

AsymptoticPrediction predict(const pathloss::PathLossModel& model,
                             const channel::AntennaScalingLaw& t_law,
                             const channel::AntennaScalingLaw& r_law) {
  AsymptoticPrediction out;
  const double y = y_ratio(t_law, r_law);
  const double f = 1.0 + std::sqrt(y);
  out.mimo_factor = f * f;

  const Scale nt = law_scale(t_law);
  out.sinr_scale = {nt.coeff, nt.lambda_pow - 1.0, nt.log_pow, nt.loglog_pow};

  const channel::ScalingClass cls = channel::classify_scaling(t_law);
  switch (cls.regime) {
    case channel::Regime::kSublinear:
      out.sinr_limit_kind = LimitKind::kZero;
      break;
    case channel::Regime::kLinear:
      out.sinr_limit_kind = LimitKind::kFinite;
      out.sinr_limit = cls.c * mimo_sinr_limit(model, y);
      break;
    case channel::Regime::kSuperlinear:
      out.sinr_limit_kind = LimitKind::kInfinite;
      break;
  }
  out.ase = ase_regime(t_law);
  out.bounds = average_sinr_bounds(t_law, r_law);
  return out;
}

}  // namespace densemimo::asymptotics
