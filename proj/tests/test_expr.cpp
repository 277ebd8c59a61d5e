#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "eigenlab/expr.hpp"

using namespace eigenlab;

namespace {

double at(const std::string& text, double x, double y = 0.0, int dim = 1) {
  return parse_field(text, dim)(Point{x, y});
}

}  // namespace

TEST(Expr, ElementaryValues) {
  EXPECT_DOUBLE_EQ(at("x^2", 3.0), 9.0);
  EXPECT_DOUBLE_EQ(at("2-1/(1+x^2)", 0.0), 1.0);
  EXPECT_DOUBLE_EQ(at("cos(x)+1", 2.0 * M_PI * 3.0), 2.0);
  EXPECT_DOUBLE_EQ(at("-2^2", 0.0), -4.0);
  EXPECT_DOUBLE_EQ(at("2^3^2", 0.0), 512.0);
  EXPECT_DOUBLE_EQ(at("min(1, max(-1, sqrt(3)*x))", 10.0), 1.0);
  EXPECT_DOUBLE_EQ(at("x*y + pi", 2.0, 3.0, 2), 6.0 + M_PI);
  EXPECT_NEAR(at("atan(x) + pi", 1.0), M_PI / 4 + M_PI, 1e-15);
  EXPECT_DOUBLE_EQ(at("e", 0.0), std::exp(1.0));
}

TEST(Expr, PiecewiseSemantics) {
  const ScalarField well = parse_field("piecewise(abs(x)<1, -1, 0)");
  EXPECT_EQ(well(0.5), -1.0);
  EXPECT_EQ(well(-0.999), -1.0);
  EXPECT_EQ(well(1.0), 0.0);
  EXPECT_EQ(well(-3.0), 0.0);
  EXPECT_EQ(at("piecewise(x<0, exp(x), 1)", 0.0), 1.0);
  EXPECT_EQ(at("piecewise(x<=0, 5, 1)", 0.0), 5.0);
  EXPECT_EQ(at("piecewise(x >= 0, 2, 3)", 0.0), 2.0);
  EXPECT_EQ(at("piecewise(x ≥ 0, 2, 3)", -1e-300), 3.0);
}

TEST(Expr, SyntaxErrorsCarryOffsets) {
  try {
    parse_field("2**");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(parse_field("sin(x"), SyntaxError);
  EXPECT_THROW(parse_field("1 +"), SyntaxError);
  EXPECT_THROW(parse_field("(x))"), SyntaxError);
  EXPECT_THROW(parse_field("foo(x)"), UnknownIdentifier);
  EXPECT_THROW(parse_field("y + 1", 1), UnknownIdentifier);
  EXPECT_NO_THROW(parse_field("y + 1", 2));
}

TEST(Expr, NonFiniteEvaluationIsDomainError) {
  EXPECT_THROW(at("sqrt(x)", -1.0), DomainError);
  EXPECT_THROW(at("log(x)", 0.0), DomainError);
  EXPECT_THROW(at("1/x", 0.0), DomainError);
}

TEST(Expr, ConstantsAndStructure) {
  EXPECT_TRUE(parse_field("0").is_zero());
  EXPECT_TRUE(parse_field("3.5").is_constant());
  EXPECT_FALSE(parse_field("x").is_constant());
  EXPECT_TRUE(parse_field("x*y", 2).uses(1));
  EXPECT_FALSE(parse_field("x*x", 2).uses(1));
  const ScalarField f = parse_field("x");
  EXPECT_DOUBLE_EQ(f.scaled(3.0)(2.0), 6.0);
  EXPECT_DOUBLE_EQ(f.plus(1.5)(2.0), 3.5);
}

// Random ASTs: printing and reparsing gives a structurally equal tree, and
// evaluation agrees with the original at random points.
TEST(ExprProperty, PrintParseRoundTrip) {
  std::mt19937_64 rng(20240611);
  const char* leaves[] = {"x", "y", "1.5", "pi", "2", "0.25"};
  const char* unary[] = {"abs", "sin", "cos", "atan", "tanh", "exp"};
  const char* binary[] = {"+", "-", "*"};
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 5);
    switch (pick(rng)) {
      case 0:
      case 1: return leaves[rng() % 6];
      case 2: return std::string(unary[rng() % 6]) + "(" + gen(depth - 1) + ")";
      case 3: return "(" + gen(depth - 1) + ")" + binary[rng() % 3] + "(" + gen(depth - 1) + ")";
      case 4: return "min(" + gen(depth - 1) + ", " + gen(depth - 1) + ")";
      default:
        return "piecewise(" + gen(depth - 1) + " < " + gen(depth - 1) + ", " + gen(depth - 1) + ", " +
               gen(depth - 1) + ")";
    }
  };
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string text = gen(4);
    const ScalarField f = parse_field(text, 2);
    const ScalarField g = parse_field(f.to_string(), 2);
    ASSERT_TRUE(f == g) << text << " printed as " << f.to_string();
    for (int k = 0; k < 5; ++k) {
      const Point p{coord(rng), coord(rng)};
      double fv = 0.0;
      try {
        fv = f(p);
      } catch (const DomainError&) {
        continue;
      }
      ASSERT_EQ(fv, g(p)) << text;
    }
  }
}

// Exactly one branch is taken: the value equals one of the two branches.
TEST(ExprProperty, PiecewiseTotality) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const ScalarField f = parse_field("piecewise(sin(3*x) <= x/2, 10 + x, -10 - x)");
  for (int i = 0; i < 2000; ++i) {
    const double x = u(rng);
    const double v = f(x);
    const bool then_branch = std::sin(3 * x) <= x / 2;
    EXPECT_EQ(v, then_branch ? 10 + x : -10 - x);
  }
}
