#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <cmath>
#include <random>
#include <sstream>

#include "eigenlab/discretize.hpp"

using namespace eigenlab;

namespace {

// Smallest eigenvalue of -A by dense symmetric solve after mass symmetrization.
double dense_lambda(const DiscreteOperator& D) {
  Eigen::MatrixXd A = Eigen::MatrixXd(D.A);
  const Eigen::VectorXd s = D.mass.cwiseSqrt();
  Eigen::MatrixXd S = -(s.asDiagonal() * A * s.cwiseInverse().asDiagonal());
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace

TEST(Grid, UniformNodesOnUnitInterval) {
  const Grid g = build_grid(DomainSpec::interval(0, 1), 0.25);
  ASSERT_EQ(g.lines.size(), 1u);
  const std::vector<double> want{0, 0.25, 0.5, 0.75, 1};
  ASSERT_EQ(g.lines[0].size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_DOUBLE_EQ(g.lines[0][i], want[i]);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.nbr[0][0], -1);
  EXPECT_EQ(g.nbr[2][1], -1);
}

TEST(Grid, BreakpointsAreNodes) {
  const double q = kPi / 4;
  const Grid g = build_grid(DomainSpec::interval(-1, 1), 0.1, std::vector<double>{-q, q});
  int hits = 0;
  for (const Point& p : g.points)
    if (p.x == q || p.x == -q) ++hits;
  EXPECT_EQ(hits, 2);
  EXPECT_LE(g.max_spacing(), 0.1 + 1e-12);
}

TEST(Grid, RefinementIsNested) {
  const DomainSpec dom = DomainSpec::interval(-1, 2);
  const Grid g0 = build_grid(dom, 0.1, std::vector<double>{0.3});
  const Grid g1 = build_grid(dom, 0.1, std::vector<double>{0.3}, {}, 1);
  ASSERT_EQ(g1.lines[0].size(), 2 * g0.lines[0].size() - 1);
  for (std::size_t i = 0; i < g0.lines[0].size(); ++i) EXPECT_DOUBLE_EQ(g1.lines[0][2 * i], g0.lines[0][i]);
}

TEST(Grid, Errors) {
  EXPECT_THROW(build_grid(DomainSpec::disk(0, 0, 0.1), 1.0), DegenerateDomain);
  EXPECT_THROW(build_grid(DomainSpec::full_line(), 0.1), PreconditionFailed);
  EXPECT_THROW(build_grid(DomainSpec::interval(0, 1), 0.0), PreconditionFailed);
}

TEST(Assemble, LaplacianOnQuarterGrid) {
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 0.25);
  const Eigen::MatrixXd A(D.A);
  Eigen::MatrixXd want(3, 3);
  want << -32, 16, 0, 16, -32, 16, 0, 16, -32;
  EXPECT_LT((A - want).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(D.irreducible);
  EXPECT_TRUE(D.symmetric_form);
  EXPECT_GE(D.offdiag_min, 0.0);

  const auto C = discretize(OperatorSpec::one_d("1", "0", "5"), DomainSpec::interval(0, 1), 0.25);
  const Eigen::MatrixXd Ac(C.A);
  EXPECT_LT((Ac - want - 5.0 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Assemble, ExactOnAffineAndQuadratics) {
  const DomainSpec dom = DomainSpec::interval(0, 1);
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), dom, 0.1);
  const Grid& g = *D.grid;
  // Dirichlet elimination drops boundary values, so use functions vanishing at both ends.
  const Vector u = g.sample(parse_field("x*(1-x)"));
  const Vector Lu = apply(D, u);
  for (Eigen::Index i = 0; i < Lu.size(); ++i) EXPECT_NEAR(Lu[i], -2.0, 1e-10);

  const auto B = discretize(OperatorSpec::one_d("2", "3", "0"), dom, 0.1);
  const Vector Lb = apply(B, u);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.points[k].x;
    EXPECT_NEAR(Lb[static_cast<Eigen::Index>(k)], -4.0 + 3.0 * (1 - 2 * x), 1e-10);
  }
  EXPECT_THROW(apply(D, Vector::Ones(2)), SizeMismatch);
}

TEST(Assemble, StrongDriftIsUpwindedAndStaysMonotone) {
  const auto D = discretize(OperatorSpec::one_d("1", "1000", "0"), DomainSpec::interval(0, 1), 0.1);
  EXPECT_GT(D.upwind_nodes, 0);
  EXPECT_GE(D.offdiag_min, 0.0);
  const auto U = discretize(OperatorSpec::one_d("1", "1", "0"), DomainSpec::interval(0, 1), 0.1,
                            0, DriftScheme::upwind);
  EXPECT_EQ(U.upwind_nodes, static_cast<int>(U.size()));
  EXPECT_FALSE(U.symmetric_form);
}

TEST(Residual, ExactPairAndZeroVector) {
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 0.25);
  Vector phi(3);
  phi << std::sin(kPi / 4), 1.0, std::sin(kPi / 4);
  const double lam = 32.0 * (1.0 - std::cos(kPi / 4));
  EXPECT_LT(residual(D, lam, phi), 1e-12);
  EXPECT_GT(residual(D, lam + 1.0, phi), 0.5);
  EXPECT_THROW(residual(D, lam, Vector::Zero(3)), ZeroVector);
}

TEST(Convergence, SecondOrderOnUnitInterval) {
  const OperatorSpec op = OperatorSpec::one_d("1", "0", "0");
  std::vector<double> err;
  for (double h : {0.1, 0.05, 0.025}) {
    const auto D = discretize(op, DomainSpec::interval(0, 1), h);
    err.push_back(std::fabs(dense_lambda(D) - kPi * kPi));
  }
  for (std::size_t i = 0; i + 1 < err.size(); ++i) {
    const double slope = std::log2(err[i] / err[i + 1]);
    EXPECT_NEAR(slope, 2.0, 0.05);
  }
}

TEST(Convergence, DivergenceFormMatchesReferenceOnSmoothDiffusion) {
  // (x^2 u')' on (1, e) has eigenfunctions sqrt(x)^{-1} sin(pi ln x), lambda = pi^2 + 1/4.
  const auto D = discretize(OperatorSpec::one_d("x^2", "0", "0", {}, Form::divergence),
                            DomainSpec::interval(1, std::exp(1.0)), 0.002);
  EXPECT_NEAR(dense_lambda(D), kPi * kPi + 0.25, 2e-3);
}

TEST(Assemble, SquarePositionInvariance) {
  const OperatorSpec op = OperatorSpec::two_d("1", "1", "0", "0", "0");
  const double a = dense_lambda(discretize(op, DomainSpec::rectangle(0, 1, 0, 1), 0.1));
  const double b = dense_lambda(discretize(op, DomainSpec::rectangle(-0.5, 0.5, -0.5, 0.5), 0.1));
  const double c = dense_lambda(discretize(op, DomainSpec::rectangle(-1, 0, -0.3, 0.7), 0.1));
  EXPECT_NEAR(a, b, 1e-9);
  EXPECT_NEAR(a, c, 1e-9);
  EXPECT_NEAR(a, 2 * kPi * kPi, 0.2);
}

TEST(Restrict, MaskedNodesBecomeDirichlet) {
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 0.1);
  std::vector<char> keep(static_cast<std::size_t>(D.size()), 1);
  keep[4] = 0;
  const auto R = restrict_to(D, keep);
  EXPECT_EQ(R.size(), D.size() - 1);
  EXPECT_FALSE(R.irreducible);
  EXPECT_THROW(restrict_to(D, std::vector<char>(3, 1)), SizeMismatch);
}

TEST(Periodic, ConstantIsInKernel) {
  const auto P = assemble_periodic(OperatorSpec::one_d("1", "0.3", "0"), 2 * kPi, 64);
  const Vector r = apply(P, Vector::Ones(64));
  EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(P.irreducible);
  EXPECT_THROW(assemble_periodic(OperatorSpec::one_d("1", "0", "0"), 1.0, 2), PreconditionFailed);
}

TEST(Coo, DumpsEveryNonzero) {
  const auto D = discretize(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 0.25);
  std::ostringstream os;
  write_coo(D, os);
  EXPECT_EQ(os.str(), "0 0 -32\n0 1 16\n1 0 16\n1 1 -32\n1 2 16\n2 1 16\n2 2 -32\n");
}

// Discrete comparison: with c < 0 and nonnegative off-diagonals, -A u = f >= 0
// forces u >= 0 at every node.
TEST(DiscreteProperty, ComparisonPrinciple) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const double a0 = 0.2 + u(rng), b0 = 4 * (u(rng) - 0.5), c0 = -0.1 - u(rng);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.6f + 0.1*sin(3*x)", a0);
    const std::string a = buf;
    std::snprintf(buf, sizeof buf, "%.6f*cos(x)", b0);
    const std::string b = buf;
    std::snprintf(buf, sizeof buf, "%.6f - 0.05*x^2", c0);
    const std::string c = buf;
    const auto D = discretize(OperatorSpec::one_d(a, b, c), DomainSpec::interval(-1, 2), 0.05);
    Vector f(D.size());
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = u(rng) < 0.3 ? 0.0 : u(rng);
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    const Eigen::SparseMatrix<double> M = -Eigen::SparseMatrix<double>(D.A);
    lu.compute(M);
    ASSERT_EQ(lu.info(), Eigen::Success);
    const Vector sol = lu.solve(f);
    EXPECT_GE(sol.minCoeff(), -1e-12) << a << " | " << b << " | " << c;
  }
}

// Off-diagonal signs and the zero row sum of pure drift/diffusion rows.
TEST(DiscreteProperty, MonotoneRowsForRandomCoefficients) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.5f + %.5f*x^2", 0.01 + std::fabs(u(rng)), std::fabs(u(rng)));
    const std::string a = buf;
    std::snprintf(buf, sizeof buf, "%.5f*x + %.5f", 50 * u(rng), 50 * u(rng));
    const std::string b = buf;
    const auto D = discretize(OperatorSpec::one_d(a, b, "0"), DomainSpec::interval(-2, 1), 0.07);
    EXPECT_GE(D.offdiag_min, 0.0);
    const Vector ones = Vector::Ones(D.size());
    const Vector rows = D.A * ones;
    // Interior rows (both neighbors present) sum to zero.
    for (Eigen::Index i = 1; i + 1 < D.size(); ++i) EXPECT_NEAR(rows[i], 0.0, 1e-9 * D.inf_norm());
  }
}

TEST(Discretize, RejectsDegenerateDiffusion) {
  EXPECT_THROW(discretize(OperatorSpec::one_d("x-0.5", "0", "0"), DomainSpec::interval(0, 1), 0.1), NonElliptic);
  EXPECT_THROW(discretize(OperatorSpec::one_d("x", "0", "0", {}, Form::divergence), DomainSpec::interval(-1, 1), 0.1),
               NonElliptic);
}
