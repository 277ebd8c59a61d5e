#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <set>

#include "eigenlab/report.hpp"
#include "eigenlab/scenarios.hpp"

using namespace eigenlab;

namespace {

std::string describe(const ScenarioReport& rep) {
  std::string s;
  for (const auto& e : rep.expectations)
    if (!e.pass)
      s += "  " + e.quantity + ": value " + format_double(e.value) + " " + e.relation + " " + format_double(e.target) + "\n";
  return s;
}

}  // namespace

TEST(Roots, GammaSolvesTheMatchingEquation) {
  const GammaRoot g = find_gamma();
  EXPECT_LE(g.residual, 1e-12);
  EXPECT_NEAR(g.gamma, 1.2766445246685891, 1e-12);
  // Independent evaluation of gamma tan(pi gamma / 4) = 2.
  EXPECT_NEAR(g.gamma * std::tan(kPi * g.gamma / 4.0), 2.0, 1e-12);
  EXPECT_NEAR(g.k, std::exp(kPi / 2) * std::cos(kPi * g.gamma / 4.0), 1e-12);
  EXPECT_NEAR(g.threshold, std::min(1.0, g.gamma * g.gamma - 1.0), 1e-15);
}

TEST(Roots, WellEigenvalueSolvesItsMatchingEquation) {
  const double l = matching_root();
  EXPECT_NEAR(l, 0.14210412617091001, 1e-12);
  EXPECT_NEAR(std::sqrt(l) * std::tan(std::sqrt(l) * kPi), std::sqrt(1.0 - l), 1e-10);
}

TEST(Catalog, IdsAreUniqueAndKnown) {
  const auto list = list_scenarios();
  ASSERT_GE(list.size(), 10u);
  std::set<std::string> ids;
  for (const auto& s : list) {
    EXPECT_TRUE(ids.insert(s.id).second) << s.id;
    EXPECT_FALSE(s.name.empty());
  }
  EXPECT_THROW(run_scenario("S99"), UnknownScenario);
}

class ScenarioRun : public ::testing::TestWithParam<std::string> {};

TEST_P(ScenarioRun, MeetsEveryExpectation) {
  const ScenarioReport rep = run_scenario(GetParam());
  EXPECT_EQ(rep.id, GetParam());
  ASSERT_FALSE(rep.expectations.empty());
  EXPECT_TRUE(rep.pass()) << describe(rep);
  for (const auto& e : rep.expectations) EXPECT_FALSE(e.quantity.empty());
}

INSTANTIATE_TEST_SUITE_P(All, ScenarioRun,
                         ::testing::Values("S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "S10"));

TEST(Determinism, RepeatedRunsAgreeBitwise) {
  ScenarioOptions serial;
  serial.threads = 1;
  ScenarioOptions wide;
  wide.threads = 4;
  const ScenarioReport a = run_scenario("S3", serial);
  const ScenarioReport b = run_scenario("S3", wide);
  ASSERT_EQ(a.expectations.size(), b.expectations.size());
  for (std::size_t i = 0; i < a.expectations.size(); ++i) {
    EXPECT_EQ(a.expectations[i].quantity, b.expectations[i].quantity);
    EXPECT_EQ(std::memcmp(&a.expectations[i].value, &b.expectations[i].value, sizeof(double)), 0)
        << a.expectations[i].quantity;
  }
}
