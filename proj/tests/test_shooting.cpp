#include <gtest/gtest.h>

#include <cmath>

#include "eigenlab/perron.hpp"
#include "eigenlab/shooting.hpp"

using namespace eigenlab;

TEST(Shooting, ZeroCountsAroundTheThreshold) {
  const OperatorSpec lap = OperatorSpec::one_d("1", "0", "0");
  const ShootResult below = shoot_1d(lap, {0, 1}, 5.0);
  EXPECT_EQ(below.zeros, 0);
  EXPECT_TRUE(below.disconjugate);
  const ShootResult above = shoot_1d(lap, {0, 1}, 15.0);
  EXPECT_GE(above.zeros, 1);
  EXPECT_FALSE(above.disconjugate);
  EXPECT_GE(shoot_1d(lap, {0, 1}, 4.5 * kPi * kPi).zeros, 2);
  EXPECT_THROW(shoot_1d(lap, {0, kInf}, 1.0), PreconditionFailed);
}

TEST(Shooting, UnitIntervalPiSquared) {
  EXPECT_NEAR(eig_1d_shooting(OperatorSpec::one_d("1", "0", "0"), {0, 1}), kPi * kPi, 1e-8);
}

TEST(Shooting, WideIntervalQuarter) {
  EXPECT_NEAR(eig_1d_shooting(OperatorSpec::one_d("1", "0", "0"), {-kPi, kPi}), 0.25, 1e-8);
}

TEST(Shooting, ClosedFormsWithDriftAndPotential) {
  // u'' + 2u' on (0,1): u = e^{-x} sin(pi x), lambda = pi^2 + 1.
  EXPECT_NEAR(eig_1d_shooting(OperatorSpec::one_d("1", "2", "0"), {0, 1}), kPi * kPi + 1, 1e-8);
  // u'' + 3u: lambda = pi^2 - 3.
  EXPECT_NEAR(eig_1d_shooting(OperatorSpec::one_d("1", "0", "3"), {0, 1}), kPi * kPi - 3, 1e-8);
  // (x^2 u')' on (1, e): lambda = pi^2 + 1/4.
  EXPECT_NEAR(eig_1d_shooting(OperatorSpec::one_d("x^2", "0", "0", {}, Form::divergence), {1, std::exp(1.0)}),
              kPi * kPi + 0.25, 1e-8);
}

TEST(Shooting, AgreesWithGridSolve) {
  const OperatorSpec ops[] = {
      OperatorSpec::one_d("1+0.5*sin(x)", "cos(2*x)", "x"),
      OperatorSpec::one_d("2-1/(1+x^2)", "0", "piecewise(abs(x)<0.5, 1, 0)", {-0.5, 0.5}),
      OperatorSpec::one_d("exp(x/3)", "0", "-x^2", {}, Form::divergence),
  };
  for (const auto& op : ops) {
    const double grid = solve_bounded(op, DomainSpec::interval(-1, 2), 2e-3, 1e-12).extrapolated;
    EXPECT_NEAR(eig_1d_shooting(op, {-1, 2}), grid, 1e-3) << op.c.to_string();
  }
}

TEST(Integrator, ExponentialSolutionIsAccurate) {
  // u'' - u = 0 from u = 1, u' = 1 gives e^x.
  const OdeTrace tr = integrate_1d(OperatorSpec::one_d("1", "0", "-1"), 0.0, 0.0, 1.0, 1.0, 3.0);
  EXPECT_NEAR(tr.end.u, std::exp(3.0), 1e-9 * std::exp(3.0));
  EXPECT_NEAR(tr.end.w, std::exp(3.0), 1e-9 * std::exp(3.0));
  const OdeTrace back = integrate_1d(OperatorSpec::one_d("1", "0", "-1"), 0.0, 0.0, 1.0, -1.0, -2.0);
  EXPECT_NEAR(back.end.u, std::exp(2.0), 1e-9 * std::exp(2.0));
}
