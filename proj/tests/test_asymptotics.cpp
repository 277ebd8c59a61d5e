#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eigenlab/asymptotics.hpp"

using namespace eigenlab;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Case {
  OperatorSpec op;
  DomainSpec dom = DomainSpec::interval(-1.0, 2.0);
  double h = 0.1;
};

Case random_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::string a = num(0.5 + std::fabs(u(rng))) + " + " + num(0.3 * std::fabs(u(rng))) + "*cos(" + num(3 * u(rng)) + "*x)";
  const std::string b = rng() % 2 ? "0" : num(2 * u(rng)) + "*x";
  const std::string c = num(5 * u(rng)) + "*sin(" + num(2 * u(rng)) + "*x) + " + num(u(rng));
  return {OperatorSpec::one_d(a, b, c)};
}

double lam(const OperatorSpec& op, const Case& k) { return precise_lambda(discretize(op, k.dom, k.h)); }

const Check* find(const std::vector<Check>& cs, const std::string& prefix) {
  for (const auto& c : cs)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

}  // namespace

// Exact discrete coefficient laws, 200 random cases each.

TEST(CoefficientLaws, ShiftIdentity) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const Case k = random_case(rng);
    const double s = u(rng);
    EXPECT_NEAR(lam(k.op.shifted_c(s), k), lam(k.op, k) - s, 1e-12);
  }
}

TEST(CoefficientLaws, LipschitzOneInC) {
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Case k = random_case(rng);
    const ScalarField delta = parse_field(num(u(rng)) + "*cos(" + num(4 * u(rng)) + "*x) + " + num(u(rng)) + "*x");
    const auto D0 = discretize(k.op, k.dom, k.h);
    const OperatorSpec pert = k.op.with_c(k.op.c.plus(delta));
    double sup = 0.0;
    for (const Point& p : D0.grid->points) sup = std::max(sup, std::fabs(pert.c(p) - k.op.c(p)));
    EXPECT_LE(std::fabs(lam(pert, k) - precise_lambda(D0)), sup + 1e-12);
  }
}

TEST(CoefficientLaws, MonotoneInC) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Case k = random_case(rng);
    const ScalarField delta = parse_field(num(0.001 + u(rng)) + " + " + num(u(rng)) + "*sin(" + num(3 * u(rng)) + "*x)^2");
    EXPECT_LE(lam(k.op.with_c(k.op.c.plus(delta)), k), lam(k.op, k));
  }
}

TEST(CoefficientLaws, MidpointConcavityInC) {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Case k = random_case(rng);
    const std::string c2 = num(5 * u(rng)) + "*cos(" + num(3 * u(rng)) + "*x)";
    const std::string c1 = k.op.c.to_string();
    const OperatorSpec op2 = k.op.with_c(parse_field(c2));
    const OperatorSpec mid = k.op.with_c(parse_field("((" + c1 + ") + (" + c2 + "))/2"));
    EXPECT_GE(lam(mid, k) - 0.5 * (lam(k.op, k) + lam(op2, k)), -1e-9);
  }
}

TEST(CoefficientLaws, SubgridDomainMonotonicity) {
  std::mt19937_64 rng(105);
  for (int i = 0; i < 200; ++i) {
    const Case k = random_case(rng);
    const auto D = discretize(k.op, k.dom, k.h);
    const std::size_t n = static_cast<std::size_t>(D.size());
    const std::size_t lo = rng() % (n / 2);
    const std::size_t hi = lo + 1 + rng() % (n - lo - 1);
    std::vector<char> keep(n, 0);
    for (std::size_t j = lo; j <= hi; ++j) keep[j] = 1;
    EXPECT_GE(precise_lambda(restrict_to(D, keep)), precise_lambda(D));
  }
}

TEST(SweepC, ConstantPotentialIsAnExactShift) {
  const SweepTable t = sweep_c(OperatorSpec::one_d("1", "0", "1"), DomainSpec::interval(0, 1), {0, 1, 2, 5});
  ASSERT_EQ(t.rows.size(), 4u);
  for (const auto& r : t.rows) EXPECT_NEAR(r.lambda, t.rows[0].lambda - r.param, 1e-11);
  EXPECT_TRUE(find(t.checks, "midpoint concavity")->ok);
  EXPECT_TRUE(find(t.checks, "|d lambda")->ok);
  EXPECT_THROW(sweep_c(OperatorSpec::one_d("1", "0", "1"), DomainSpec::interval(0, 1), {1, 2, 3}), PreconditionFailed);
  EXPECT_THROW(sweep_c(OperatorSpec::one_d("1", "0", "1"), DomainSpec::interval(0, 1), {0, 1}), PreconditionFailed);
}

TEST(SweepC, GaussianPotentialStructuralChecks) {
  SweepOptions opt;
  opt.radius = 16.0;
  opt.h = 0.02;
  const SweepTable t = sweep_c(OperatorSpec::one_d("1", "0", "exp(-x^2)"), DomainSpec::full_line(), {0, 1, 2, 4, 8}, opt);
  EXPECT_TRUE(find(t.checks, "lambda(0)")->ok);
  EXPECT_TRUE(find(t.checks, "midpoint concavity")->ok);
  EXPECT_TRUE(find(t.checks, "|d lambda")->ok);
  EXPECT_NEAR(t.limit_target, -1.0, 1e-12);
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) EXPECT_LT(t.rows[i + 1].lambda, t.rows[i].lambda);
}

TEST(SweepA, ScaledLaplacianIsLinear) {
  SweepOptions opt;
  opt.h = 0.01;
  const SweepTable t = sweep_a(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), {0.5, 1, 2, 4}, opt);
  const double base = t.rows[1].lambda;
  for (const auto& r : t.rows) EXPECT_NEAR(r.lambda, r.param * base, 1e-9 * r.param * base);
  EXPECT_NEAR(base, kPi * kPi, 1e-3);
  EXPECT_TRUE(find(t.checks, "nondecreasing")->ok);
  EXPECT_TRUE(find(t.checks, "midpoint concavity")->ok);
  EXPECT_TRUE(find(t.checks, "scaled-coefficient")->ok);
  EXPECT_THROW(sweep_a(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), {0, 1, 2}), PreconditionFailed);
}

TEST(SweepA, CosinePotentialOnTheLine) {
  SweepOptions opt;
  opt.radius = 32.0;
  opt.h = 0.01;
  const SweepTable t =
      sweep_a(OperatorSpec::one_d("1", "0", "cos(x)"), DomainSpec::full_line(), {1.0 / 16, 0.25, 1, 4, 16}, opt);
  EXPECT_TRUE(find(t.checks, "nondecreasing")->ok);
  EXPECT_TRUE(find(t.checks, "midpoint concavity")->ok);
  EXPECT_TRUE(find(t.checks, "large-alpha")->ok);
  EXPECT_NEAR(t.limit_estimate, -1.0, 0.05);
}

TEST(PerturbC, ExamplesAndChecks) {
  const OperatorSpec op = OperatorSpec::one_d("1", "0", "cos(x)");
  const DomainSpec dom = DomainSpec::interval(-3, 3);
  SweepOptions opt;
  opt.h = 0.01;
  const PerturbReport shift = perturb_c(op, dom, ScalarField::constant(0.3), opt);
  EXPECT_NEAR(shift.change, -0.3, 1e-9);
  EXPECT_TRUE(shift.nonnegative_delta);
  EXPECT_TRUE(all_ok(shift.checks));
  const PerturbReport wave = perturb_c(op, dom, parse_field("0.1*sin(x)"), opt);
  EXPECT_LE(std::fabs(wave.change), 0.1);
  EXPECT_FALSE(wave.nonnegative_delta);
  EXPECT_TRUE(all_ok(wave.checks));
}

TEST(PerturbA, RatioOfScaledLaplacian) {
  SweepOptions opt;
  opt.h = 0.005;
  const PerturbARow row = perturb_a(OperatorSpec::one_d("1", "0", "0"), OperatorSpec::one_d("1.01", "0", "0"),
                                    DomainSpec::interval(0, 1), opt);
  EXPECT_NEAR(row.ratio, kPi * kPi, 2e-3);
  EXPECT_NEAR(row.delta_a, 0.01, 1e-15);
  EXPECT_THROW(perturb_a(OperatorSpec::one_d("1", "0", "0"), OperatorSpec::one_d("x-0.5", "0", "0"),
                         DomainSpec::interval(0, 1), opt),
               NonElliptic);
  SweepOptions line;
  line.radius = 16.0;
  line.h = 0.02;
  const PerturbAReport ladder =
      perturb_a_ladder(OperatorSpec::one_d("1+0.5*sin(x)", "0", "0"), DomainSpec::full_line(), ScalarField::constant(1.0),
                       {1e-1, 1e-2, 1e-3}, line);
  EXPECT_EQ(ladder.rows.size(), 3u);
  EXPECT_TRUE(all_ok(ladder.checks));
}

TEST(Semicontinuity, MollifiedStepAndUniformLimit) {
  SweepOptions opt;
  opt.radius = 8.0;
  opt.h = 0.01;
  const SemicontinuityReport step =
      semicontinuity_probe(mollified_step, step_target(), DomainSpec::full_line(), {1, 2, 4, 8, 16}, false, 1e-3, opt);
  EXPECT_TRUE(all_ok(step.checks));
  ASSERT_EQ(step.rows.size(), 5u);
  const auto uniform = [](int n) { return OperatorSpec::one_d("1", "0", "cos(x) + 1/" + std::to_string(n * n * n)); };
  const SemicontinuityReport conv = semicontinuity_probe(uniform, OperatorSpec::one_d("1", "0", "cos(x)"),
                                                         DomainSpec::full_line(), {1, 4, 16}, true, 1e-3, opt);
  EXPECT_TRUE(all_ok(conv.checks));
  const auto same = [](int) { return OperatorSpec::one_d("1", "0", "cos(x)"); };
  const SemicontinuityReport flat =
      semicontinuity_probe(same, OperatorSpec::one_d("1", "0", "cos(x)"), DomainSpec::full_line(), {1, 2}, true, 1e-3, opt);
  EXPECT_EQ(flat.rows[0].second, flat.rows[1].second);
  EXPECT_EQ(flat.rows[0].second, flat.lambda_target);
}
