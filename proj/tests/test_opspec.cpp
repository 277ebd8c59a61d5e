#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eigenlab/opspec.hpp"

using namespace eigenlab;

TEST(Domain, ContainsAndBoundedness) {
  const DomainSpec iv = DomainSpec::interval(0.0, 1.0);
  EXPECT_TRUE(iv.contains({0.5, 0.0}));
  EXPECT_FALSE(iv.contains({0.0, 0.0}));
  EXPECT_TRUE(iv.bounded());
  EXPECT_FALSE(DomainSpec::full_line().bounded());
  EXPECT_FALSE(DomainSpec::half_line(0.0).contains({0.0, 0.0}));
  EXPECT_TRUE(DomainSpec::disk(0, 0, 1).contains({0.0, 0.0}));
  EXPECT_FALSE(DomainSpec::annulus(0, 0, 0.5, 1).contains({0.0, 0.0}));
  EXPECT_TRUE(DomainSpec::annulus(0, 0, 0.5, 1).contains({0.75, 0.0}));
  EXPECT_EQ(DomainSpec::rectangle(0, 1, 0, 2).dim(), 2);
}

TEST(Domain, OriginIsInteriorOfCenteredSets) {
  EXPECT_TRUE(DomainSpec::rectangle(-1, 1, -1, 1).contains({0.0, 0.0}));
  EXPECT_TRUE(DomainSpec::interval(-1, 1).contains({0.0, 0.0}));
  EXPECT_TRUE(DomainSpec::full_plane().truncation(2.0).contains({0.0, 0.0}));
  EXPECT_FALSE(DomainSpec::full_line().tail(1.0).contains({0.0, 0.0}));
}

TEST(Domain, InvalidParametersRejected) {
  EXPECT_THROW(DomainSpec::interval(1.0, 0.0), PreconditionFailed);
  EXPECT_THROW(DomainSpec::disk(0, 0, -1), PreconditionFailed);
  EXPECT_THROW(DomainSpec::annulus(0, 0, 2, 1), PreconditionFailed);
  EXPECT_THROW(DomainSpec::make(Geometry::interval, {0.0}), PreconditionFailed);
}

TEST(Domain, TruncationTailAndOffsets) {
  const DomainSpec line = DomainSpec::full_line();
  const auto t4 = line.truncation(4.0).intervals();
  ASSERT_EQ(t4.size(), 1u);
  EXPECT_EQ(t4[0], (Interval{-4.0, 4.0}));
  const auto tail = line.tail(1.0).truncation(3.0).intervals();
  ASSERT_EQ(tail.size(), 2u);
  EXPECT_EQ(tail[0], (Interval{-3.0, -1.0}));
  EXPECT_EQ(tail[1], (Interval{1.0, 3.0}));
  const auto half = DomainSpec::half_line(0.0).tail(2.0).truncation(5.0).intervals();
  ASSERT_EQ(half.size(), 1u);
  EXPECT_EQ(half[0], (Interval{2.0, 5.0}));
  const DomainSpec iv = DomainSpec::interval(0.0, 1.0);
  EXPECT_EQ(iv.truncation(10.0).intervals()[0], (Interval{0.0, 1.0}));
  EXPECT_EQ(iv.inflate(0.5).intervals()[0], (Interval{-0.5, 1.5}));
  EXPECT_EQ(iv.interior_offset(0.25).intervals()[0], (Interval{0.25, 0.75}));
  EXPECT_TRUE(iv.tail(2.0).intervals().empty());
}

TEST(DomainProperty, NestingOfTruncationsAndTails) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  const DomainSpec plane = DomainSpec::full_plane();
  for (int i = 0; i < 2000; ++i) {
    const Point p{u(rng), u(rng)};
    const double r1 = std::fabs(u(rng)) + 0.1;
    const double r2 = r1 + std::fabs(u(rng));
    if (plane.truncation(r1).contains(p)) EXPECT_TRUE(plane.truncation(r2).contains(p));
    if (plane.tail(r2).contains(p)) EXPECT_TRUE(plane.tail(r1).contains(p));
  }
}

TEST(Ellipticity, Ranges) {
  const auto r1 = ellipticity_range(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 100);
  EXPECT_EQ(r1.min_alpha, 1.0);
  EXPECT_EQ(r1.max_alpha, 1.0);
  const auto r2 = ellipticity_range(OperatorSpec::one_d("1+x^2", "0", "0"), DomainSpec::interval(-2, 2), 100);
  EXPECT_DOUBLE_EQ(r2.min_alpha, 1.0);
  EXPECT_DOUBLE_EQ(r2.max_alpha, 5.0);
  EXPECT_THROW(ellipticity_range(OperatorSpec::one_d("-1", "0", "0"), DomainSpec::interval(0, 1), 10), NonElliptic);
  EXPECT_THROW(ellipticity_range(OperatorSpec::one_d("1", "0", "0"), DomainSpec::interval(0, 1), 0),
               PreconditionFailed);
}

TEST(EllipticityProperty, MoreSamplesNeverShrinkTheRange) {
  const OperatorSpec op = OperatorSpec::one_d("2 + sin(5*x) + 0.5*cos(17*x)", "0", "0");
  const DomainSpec dom = DomainSpec::interval(-3, 3);
  double lo = kInf, hi = -kInf;
  for (int n : {4, 16, 64, 256, 1024}) {
    const auto r = ellipticity_range(op, dom, n);
    EXPECT_LE(r.min_alpha, lo);
    EXPECT_GE(r.max_alpha, hi);
    lo = r.min_alpha;
    hi = r.max_alpha;
  }
}

TEST(Growth, Verdicts) {
  const std::vector<double> radii{4, 8, 16, 32, 64};
  const auto lap = growth_check(OperatorSpec::one_d("1", "0", "0"), DomainSpec::full_line(), radii);
  EXPECT_TRUE(lap.abc3_ok);
  EXPECT_TRUE(lap.sub1_ok);
  EXPECT_EQ(lap.verdict, GrowthVerdict::abc3_ok);
  EXPECT_TRUE(lap.heuristic);

  const auto lin = growth_check(OperatorSpec::one_d("1", "0", "x"), DomainSpec::full_line(), radii);
  EXPECT_FALSE(lin.sup_c_bounded);
  EXPECT_EQ(lin.verdict, GrowthVerdict::neither);

  const auto steep = growth_check(OperatorSpec::one_d("(1+abs(x))^2.5", "0", "-1"), DomainSpec::full_line(), radii);
  EXPECT_FALSE(steep.a_quad_bounded);
  EXPECT_FALSE(steep.abc3_ok);

  const auto drift = growth_check(OperatorSpec::one_d("1", "x", "0"), DomainSpec::full_line(), radii);
  EXPECT_TRUE(drift.abc3_ok);
  EXPECT_FALSE(drift.sub1_ok);

  const auto bad = growth_check(OperatorSpec::one_d("1", "0", "0"), DomainSpec::full_line(), {8, 4});
  EXPECT_EQ(bad.verdict, GrowthVerdict::unknown);
}

TEST(OperatorSpec, Validation) {
  EXPECT_THROW(OperatorSpec::one_d("1", "x", "0", {}, Form::divergence), PreconditionFailed);
  const OperatorSpec div = OperatorSpec::one_d("1+x^2", "0", "0", {}, Form::divergence);
  EXPECT_TRUE(div.self_adjoint());
  EXPECT_FALSE(OperatorSpec::one_d("1", "1", "0").self_adjoint());
  EXPECT_TRUE(OperatorSpec::one_d("2", "0", "cos(x)").self_adjoint());
  EXPECT_FALSE(OperatorSpec::one_d("1+x^2", "0", "0").self_adjoint());
  const OperatorSpec s = OperatorSpec::one_d("1", "0", "x").shifted_c(2.0).scaled_a(3.0);
  EXPECT_DOUBLE_EQ(s.c(Point{1.0, 0.0}), 3.0);
  EXPECT_DOUBLE_EQ(s.a_at(0, Point{1.0, 0.0}), 3.0);
}
