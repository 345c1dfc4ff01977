#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace densemimo::pathloss {

// L(r) = exp(-eta * r^kappa), eta > 0, kappa in (0, 1].
// gamma closed form: Gamma(2/kappa) / (kappa * eta^(2/kappa)).
struct StretchedExponential {
  double eta;
  double kappa;
};

// L(r) = l0 * min(1, (r/r_c)^-eta), eta > 2.
// gamma closed form: l0 * r_c^2 * (1/2 + 1/(eta - 2)).
struct BoundedSingleSlope {
  double l0;
  double r_c;
  double eta;
};

// L = l0 below breakpoints[0]; power segment with exponents[k] on
// [breakpoints[k], breakpoints[k+1]), continuous at the joins; the last
// exponent rules the tail.
struct BoundedMultiSlope {
  double l0;
  std::vector<double> breakpoints;
  std::vector<double> exponents;  // same length as breakpoints
};

// L = l0 on [0, radius], 0 beyond.
struct DiscModel {
  double l0;
  double radius;
};

enum class HeadRule { kFlat, kPowerLaw };
enum class TailRule { kNone, kZero, kPowerLaw };

// Sorted (r, gain) samples, log-linear interpolation between samples.
// Below the first sample: flat by default, or the power law fit to the first
// two samples (kPowerLaw reproduces singular models and fails condition (i),
// which is the point). Beyond the last sample: domain error by default, or
// zero, or the power law fit to the last two samples.
struct Tabulated {
  std::vector<double> r;
  std::vector<double> gain;
  HeadRule head = HeadRule::kFlat;
  TailRule tail = TailRule::kNone;
};

using Variant = std::variant<StretchedExponential, BoundedSingleSlope,
                             BoundedMultiSlope, DiscModel, Tabulated>;

class PathLossModel {
 public:
  PathLossModel(Variant v, std::string distance_unit = "km");

  const Variant& variant() const { return variant_; }
  const std::string& distance_unit() const { return distance_unit_; }

  // Radii at which the function changes analytic form (quadrature knots).
  std::vector<double> knots() const;
  // Radius beyond which L is identically zero, if the variant has one.
  std::optional<double> support_radius() const;
  // Closed-form gamma where one exists (test oracle / fast path bypass).
  std::optional<double> closed_form_gamma() const;
  std::string describe() const;

 private:
  Variant variant_;
  std::string distance_unit_;
};

double evaluate(const PathLossModel& model, double r);
// Analytic dL/dr (right-derivative at segment joins). Used by witness checks.
double derivative(const PathLossModel& model, double r);
double gamma_integral(const PathLossModel& model);

enum class CheckStatus { kPass, kFail, kNotChecked };

struct FeasibilityReport {
  bool condition_i = false;      // L(0) finite and strictly positive
  double l0 = 0.0;
  bool condition_ii = false;     // L(r) <= L(0) for all r
  std::optional<double> worst_violating_r;
  bool condition_iii = false;    // gamma finite and strictly positive
  std::optional<double> gamma;
  std::string condition_iii_note;
  CheckStatus assumption1_cond1 = CheckStatus::kNotChecked;
  CheckStatus assumption1_cond2 = CheckStatus::kNotChecked;
  CheckStatus assumption1_cond3 = CheckStatus::kNotChecked;
  bool feasible() const { return condition_i && condition_ii && condition_iii; }
};

struct Assumption1Witness {
  PathLossModel lower_bound;  // L-tilde; must be decreasing on [r0, inf)
  double r0 = 1.0;
  double zeta = 0.0;
  double lambda_c = 0.0;
};

// The model is its own witness (valid for strictly decreasing smooth variants;
// for StretchedExponential: zeta = 1/(eta*kappa) on r0 = 1, lambda_c = 0).
Assumption1Witness self_witness(const PathLossModel& model);

struct Assumption1Report {
  bool cond1 = false;  // L-tilde <= L on [r0, r_max]
  double worst_gap1 = 0.0;
  bool cond2 = false;  // r * L-tilde / (-L-tilde') >= zeta
  double min_ratio2 = 0.0;
  bool cond3 = false;  // integral r / L-tilde^2 * exp(-pi lambda0 r^2) converges
  double integral3 = 0.0;
  bool all() const { return cond1 && cond2 && cond3; }
};

// Geometric checking grid shared by the "for all r" validations:
// {0} U geometric[1e-6, 1e4] with `points` samples.
std::vector<double> check_grid(std::size_t points = 4096, double lo = 1e-6,
                               double hi = 1e4);

FeasibilityReport validate_feasibility(const PathLossModel& model);
Assumption1Report check_assumption1(const PathLossModel& model,
                                    const Assumption1Witness& witness,
                                    double lambda0);

}  // namespace densemimo::pathloss
