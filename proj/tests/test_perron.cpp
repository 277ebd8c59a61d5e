#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "eigenlab/perron.hpp"

using namespace eigenlab;

namespace {

// Independent reference: all eigenvalues of the dense matrix, pick the one with
// the largest real part and return minus it.
double oracle_lambda(const DiscreteOperator& D) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(D.A), false);
  double best = -kInf;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) best = std::max(best, es.eigenvalues()[i].real());
  return -best;
}

DiscreteOperator random_operator(std::mt19937_64& rng, double h) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  char a[96], b[96], c[96];
  std::snprintf(a, sizeof a, "%.4f + %.4f*sin(%.3f*x)^2", 0.3 + std::fabs(u(rng)), std::fabs(u(rng)), 3 * u(rng));
  std::snprintf(b, sizeof b, "%.4f*x + %.4f", 3 * u(rng), 3 * u(rng));
  std::snprintf(c, sizeof c, "%.4f*cos(%.3f*x)", 4 * u(rng), 2 * u(rng));
  return discretize(OperatorSpec::one_d(a, b, c), DomainSpec::interval(-1.0, 1.5), h);
}

}  // namespace

TEST(Perron, QuarterGridClosedForm) {
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 0.25);
  const EigenResult r = principal_eig(D, 1e-12);
  EXPECT_NEAR(r.lambda, 32.0 * (1.0 - std::cos(kPi / 4)), 1e-10);
  EXPECT_GT(r.phi.minCoeff(), 0.0);
  EXPECT_LT(r.rel_residual, 1e-10);
}

TEST(Perron, MatchesDenseOracleOnRandomOperators) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const auto D = random_operator(rng, 0.02);
    const EigenResult r = principal_eig(D, 1e-12);
    EXPECT_NEAR(r.lambda, oracle_lambda(D), 1e-8 * std::max(1.0, std::fabs(r.lambda)));
    EXPECT_GT(r.phi.minCoeff(), 0.0);
    const EigenResult d = dense_oracle(D);
    EXPECT_NEAR(d.lambda, r.lambda, 1e-8 * std::max(1.0, std::fabs(r.lambda)));
    EXPECT_LT(d.imag_part, 1e-10);
  }
}

TEST(Perron, LargeGridUsesShiftInvert) {
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 1e-3, 1);
  const EigenResult r = principal_eig(D, 1e-12);
  const double h = 5e-4;
  EXPECT_NEAR(r.lambda, 4.0 / (h * h) * std::pow(std::sin(kPi * h / 2), 2), 1e-7);
  EXPECT_EQ(r.method, "shift-invert");
}

TEST(Perron, Failures) {
  SparseMatrix diag(3, 3);
  diag.insert(0, 0) = -1;
  diag.insert(1, 1) = -2;
  diag.insert(2, 2) = -3;
  EXPECT_THROW(principal_eig(DiscreteOperator::from_matrix(diag)), Reducible);

  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 0.01);
  try {
    principal_eig(D, 1e-12, 1);
    FAIL() << "expected NoConvergence";
  } catch (const NoConvergence& e) {
    EXPECT_EQ(e.max_iter(), 1);
    EXPECT_TRUE(std::isfinite(e.best().lambda));
  }
  EXPECT_THROW(principal_eig(D, 0.0), PreconditionFailed);
  EXPECT_THROW(dense_oracle(D, 10), SizeExceeded);
}

TEST(Rayleigh, MinimumAndSymmetryGate) {
  const auto D = discretize(OperatorSpec::one_d("1", "0", "cos(3*x)"), DomainSpec::interval(0, 2), 0.01);
  EXPECT_NEAR(rayleigh_min(D), oracle_lambda(D), 1e-9);
  const auto S = discretize(OperatorSpec::one_d("1+x^2", "0", "0", {}, Form::divergence),
                            DomainSpec::interval(-1, 1), 0.02);
  EXPECT_NEAR(rayleigh_min(S), oracle_lambda(S), 1e-9);
  const auto N = discretize(OperatorSpec::one_d("1", "3", "0"), DomainSpec::interval(0, 1), 0.05);
  EXPECT_THROW(rayleigh_min(N), NotSymmetric);
}

TEST(Rayleigh, QuotientOfTestFunctions) {
  const OperatorSpec lap = OperatorSpec::one_d("1", "0", "0");
  const Grid g = build_grid(DomainSpec::interval(0, 1), 1e-3);
  // int (1-2x)^2 / int x^2 (1-x)^2 = (1/3) / (1/30)
  EXPECT_NEAR(rayleigh_quotient(lap, g, parse_field("x*(1-x)")), 10.0, 1e-4);
  EXPECT_THROW(rayleigh_quotient(lap, g, parse_field("0")), ZeroDenominator);
  const double sinq = rayleigh_quotient(lap, g, parse_field("sin(pi*x)"));
  EXPECT_NEAR(sinq, kPi * kPi, 1e-4);
  EXPECT_THROW(rayleigh_quotient(OperatorSpec::one_d("1", "1", "0"), g, parse_field("x")), PreconditionFailed);
}

TEST(Sturm, TridiagonalEigenvaluesMatchClosedForm) {
  const int n = 99;
  const double h = 1.0 / (n + 1);
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), h);
  ASSERT_EQ(D.size(), n);
  for (int k : {0, 1, 5, 40, 98}) {
    const double want = 4.0 / (h * h) * std::pow(std::sin((k + 1) * kPi * h / 2), 2);
    EXPECT_NEAR(tridiagonal_eigenvalue(D, k), want, 1e-9 * want);
  }
  EXPECT_THROW(tridiagonal_eigenvalue(D, n), PreconditionFailed);
}

TEST(Periodic, MathieuLikeOperator) {
  const EigenResult r = periodic_eig(OperatorSpec::one_d("1", "0", "cos(x)"), 2 * kPi, 1024);
  EXPECT_NEAR(r.lambda, -0.378489, 1e-5);
  const EigenResult flat = periodic_eig(OperatorSpec::one_d("1", "0", "-2"), 2 * kPi, 256);
  EXPECT_NEAR(flat.lambda, 2.0, 1e-10);
}

TEST(Richardson, ExtrapolationReachesPiSquared) {
  const BoundedSolve s = solve_bounded(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 1e-2, 1e-12);
  EXPECT_EQ(s.order, 2);
  EXPECT_NEAR(s.extrapolated, kPi * kPi, 1e-5);
  EXPECT_LT(std::fabs(s.extrapolated - kPi * kPi), std::fabs(s.fine.lambda - kPi * kPi));
}

// Shifting the diagonal by s shifts lambda by -s.
TEST(PerronProperty, ShiftAndPositivity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto D = random_operator(rng, 0.05);
    const double s = u(rng);
    SparseMatrix I(D.size(), D.size());
    I.setIdentity();
    const auto Ds = DiscreteOperator::from_matrix(D.A + s * I, D.grid, D.mass);
    const EigenResult a = principal_eig(D, 1e-12);
    const EigenResult b = principal_eig(Ds, 1e-12);
    EXPECT_NEAR(b.lambda, a.lambda - s, 1e-8 * std::max(1.0, std::fabs(a.lambda)));
    EXPECT_GT(a.phi.minCoeff(), 0.0);
  }
}
