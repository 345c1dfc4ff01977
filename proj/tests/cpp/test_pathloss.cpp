#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "densemimo/errors.hpp"
#include "densemimo/pathloss.hpp"
#include "densemimo/rng.hpp"

using namespace densemimo;
using namespace densemimo::pathloss;

namespace {
PathLossModel se_default() {
  return PathLossModel(StretchedExponential{0.9, 0.52});
}
// gamma for eta=0.9, kappa=0.52, frozen from an independent special-function
// evaluation: Gamma(2/0.52) / (0.52 * 0.9^(2/0.52))
constexpr double kGammaSE = 14.311713370280874;
}  // namespace

TEST_CASE("evaluate: stretched exponential") {
  const auto m = se_default();
  CHECK(evaluate(m, 0.0) == 1.0);
  CHECK(evaluate(m, 1.0) == doctest::Approx(0.40656965974059911).epsilon(1e-14));
  CHECK_THROWS_AS(evaluate(m, -0.1), DomainError);
}

TEST_CASE("evaluate: disc") {
  const PathLossModel m(DiscModel{1.0, 1.0});
  CHECK(evaluate(m, 2.0) == 0.0);
  CHECK(evaluate(m, 0.5) == 1.0);
  CHECK(evaluate(m, 1.0) == 1.0);
}

TEST_CASE("evaluate: bounded single slope continuity at r_c") {
  const PathLossModel m(BoundedSingleSlope{2.0, 1.5, 4.0});
  CHECK(evaluate(m, 0.0) == 2.0);
  CHECK(evaluate(m, 1.5) == 2.0);
  CHECK(evaluate(m, 3.0) == doctest::Approx(2.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("evaluate: multi-slope continuity") {
  const PathLossModel m(BoundedMultiSlope{1.0, {1.0, 10.0}, {2.5, 4.0}});
  CHECK(evaluate(m, 0.5) == 1.0);
  CHECK(evaluate(m, 1.0) == 1.0);
  const double just_below = evaluate(m, 10.0 * (1 - 1e-12));
  const double just_above = evaluate(m, 10.0 * (1 + 1e-12));
  CHECK(just_below == doctest::Approx(just_above).epsilon(1e-9));
  CHECK(evaluate(m, 10.0) == doctest::Approx(std::pow(10.0, -2.5)).epsilon(1e-13));
}

TEST_CASE("evaluate: tabulated interpolation and extrapolation rules") {
  Tabulated t{{1.0, 2.0, 4.0}, {1.0, 0.25, 0.0625}, HeadRule::kFlat,
              TailRule::kNone};
  const PathLossModel m(t);
  // log-linear through a power law reproduces it exactly
  CHECK(evaluate(m, 3.0) == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(evaluate(m, 0.5) == 1.0);  // flat head
  CHECK_THROWS_AS(evaluate(m, 5.0), DomainError);

  t.tail = TailRule::kZero;
  CHECK(evaluate(PathLossModel(t), 5.0) == 0.0);
  t.tail = TailRule::kPowerLaw;
  CHECK(evaluate(PathLossModel(t), 8.0) == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("derivative matches central differences") {
  const auto m = se_default();
  CHECK(derivative(m, 1.0) == doctest::Approx(-0.19027460075860038).epsilon(1e-13));
  for (double r : {0.3, 1.7, 42.0}) {
    const double h = r * 1e-6;
    const double num = (evaluate(m, r + h) - evaluate(m, r - h)) / (2 * h);
    CHECK(derivative(m, r) == doctest::Approx(num).epsilon(1e-7));
  }
}

TEST_CASE("gamma_integral: closed-form oracles") {
  CHECK(gamma_integral(PathLossModel(DiscModel{1.0, 1.0})) ==
        doctest::Approx(0.5).epsilon(1e-10));
  // L(r) = min(1, r^-4)
  CHECK(gamma_integral(PathLossModel(BoundedSingleSlope{1.0, 1.0, 4.0})) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(gamma_integral(se_default()) == doctest::Approx(kGammaSE).epsilon(1e-9));
  CHECK(*se_default().closed_form_gamma() ==
        doctest::Approx(kGammaSE).epsilon(1e-12));
  // scaled/shifted single slope: l0 * r_c^2 * (1/2 + 1/(eta-2))
  CHECK(gamma_integral(PathLossModel(BoundedSingleSlope{2.5, 3.0, 3.5})) ==
        doctest::Approx(2.5 * 9.0 * (0.5 + 1.0 / 1.5)).epsilon(1e-10));
}

TEST_CASE("gamma_integral: multi-slope vs hand-derived antiderivative") {
  const PathLossModel m(BoundedMultiSlope{1.0, {1.0, 10.0}, {2.5, 4.0}});
  // 1/2 + (2 - 2/sqrt(10)) + 10^1.5/200
  CHECK(gamma_integral(m) == doctest::Approx(2.025658350974743).epsilon(1e-10));
}

TEST_CASE("gamma_integral: divergent tabulated tail carries partial value") {
  const Tabulated t{{1.0, 2.0}, {1.0, std::pow(2.0, -1.5)}, HeadRule::kFlat,
                    TailRule::kPowerLaw};
  try {
    gamma_integral(PathLossModel(t));
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.partial == doctest::Approx(1.3284271247461903).epsilon(1e-9));
  }
}

TEST_CASE("gamma_integral: tabulated with no tail rule refuses") {
  const Tabulated t{{1.0, 2.0}, {1.0, 0.5}, HeadRule::kFlat, TailRule::kNone};
  CHECK_THROWS_AS(gamma_integral(PathLossModel(t)), DivergenceError);
}

TEST_CASE("validate_feasibility: shipped models pass") {
  for (const auto& m :
       {se_default(), PathLossModel(DiscModel{1.0, 1.0}),
        PathLossModel(BoundedSingleSlope{1.0, 1.0, 4.0}),
        PathLossModel(BoundedMultiSlope{1.0, {1.0, 10.0}, {2.5, 4.0}})}) {
    const auto rep = validate_feasibility(m);
    CHECK(rep.feasible());
  }
  const auto disc = validate_feasibility(PathLossModel(DiscModel{1.0, 1.0}));
  CHECK(*disc.gamma == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("validate_feasibility: r^-4 mimic with power head fails condition i") {
  const Tabulated t{{1e-3, 1e-2, 1e-1, 1.0, 10.0},
                    {1e12, 1e8, 1e4, 1.0, 1e-4},
                    HeadRule::kPowerLaw,
                    TailRule::kPowerLaw};
  const auto rep = validate_feasibility(PathLossModel(t));
  CHECK_FALSE(rep.condition_i);
  CHECK_FALSE(rep.feasible());
  // same table with the default flat head is feasible (bounded mimic)
  const Tabulated flat{{1e-3, 1e-2, 1e-1, 1.0, 10.0},
                       {1e12, 1e8, 1e4, 1.0, 1e-4},
                       HeadRule::kFlat,
                       TailRule::kPowerLaw};
  CHECK(validate_feasibility(PathLossModel(flat)).feasible());
}

TEST_CASE("monotone non-increasing property on random pairs") {
  rng::Stream st = rng::derive(7, {1});
  const auto se = se_default();
  const PathLossModel bss(BoundedSingleSlope{1.0, 2.0, 3.0});
  const PathLossModel disc(DiscModel{1.0, 5.0});
  for (int i = 0; i < 1000; ++i) {
    double a = 100.0 * st.u01();
    double b = 100.0 * st.u01();
    if (a > b) std::swap(a, b);
    for (const auto* m : {&se, &bss, &disc})
      CHECK(evaluate(*m, a) >= evaluate(*m, b));
  }
}

TEST_CASE("check_assumption1: stretched-exp self witness passes") {
  const auto m = se_default();
  const auto w = self_witness(m);
  CHECK(w.zeta == doctest::Approx(1.0 / (0.9 * 0.52)));
  const auto rep = check_assumption1(m, w, 1.0);
  CHECK(rep.cond1);
  CHECK(rep.cond2);
  // true minimum of r^(2-kappa)/(eta kappa) on r >= 1 is zeta itself
  CHECK(rep.min_ratio2 >= w.zeta);
  CHECK(rep.cond3);
}

TEST_CASE("check_assumption1: witness above L fails condition 1") {
  const auto m = se_default();
  Assumption1Witness w{PathLossModel(StretchedExponential{0.5, 0.52}), 1.0,
                       0.1, 0.0};
  const auto rep = check_assumption1(m, w, 1.0);
  CHECK_FALSE(rep.cond1);
}

TEST_CASE("check_assumption1: disc model vs witness with wider support") {
  const PathLossModel m(DiscModel{1.0, 1.0});
  Assumption1Witness w{se_default(), 1.0, 0.1, 0.0};
  const auto rep = check_assumption1(m, w, 1.0);
  CHECK_FALSE(rep.cond1);
}

TEST_CASE("check_assumption1: non-decreasing witness rejected") {
  const Tabulated rising{{1.0, 10.0}, {0.1, 0.5}, HeadRule::kFlat,
                         TailRule::kZero};
  Assumption1Witness w{PathLossModel(rising), 1.0, 0.1, 0.0};
  CHECK_THROWS_AS(check_assumption1(se_default(), w, 1.0),
                  InvalidWitnessError);
}

TEST_CASE("check_assumption1: lambda0 must exceed lambda_c") {
  auto w = self_witness(se_default());
  w.lambda_c = 2.0;
  CHECK_THROWS_AS(check_assumption1(se_default(), w, 1.0), DomainError);
}

TEST_CASE("parameter validation at construction") {
  CHECK_THROWS_AS(PathLossModel(StretchedExponential{0.9, 1.5}), DomainError);
  CHECK_THROWS_AS(PathLossModel(StretchedExponential{-1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(PathLossModel(BoundedSingleSlope{1.0, 1.0, 2.0}), DomainError);
  CHECK_THROWS_AS(PathLossModel(DiscModel{0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(PathLossModel(Tabulated{{2.0, 1.0}, {1.0, 0.5}}), DomainError);
  CHECK_THROWS_AS(PathLossModel(Tabulated{{1.0}, {1.0}}), DomainError);
}

TEST_CASE("gamma homogeneity: scaling gains scales gamma") {
  const double g1 = gamma_integral(PathLossModel(DiscModel{1.0, 2.0}));
  const double g3 = gamma_integral(PathLossModel(DiscModel{3.0, 2.0}));
  CHECK(g3 == doctest::Approx(3.0 * g1).epsilon(1e-12));
}
