#include <gtest/gtest.h>

#include <cmath>

#include "eigenlab/config.hpp"
#include "eigenlab/report.hpp"

using namespace eigenlab;

namespace {

const char* kText = R"(# line laplacian
[operator]
a = 1
b = 0
c = piecewise(abs(x) < pi, 0, -1)   # well
breakpoints = -pi, pi

[domain]
geometry = full_line
unbounded = true

[solve]
tol = 1e-11
schedule = 2, 4, 8
)";

template <class F>
ConfigError config_error(F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "expected ConfigError";
  return ConfigError(-1, "", "");
}

}  // namespace

TEST(Config, ParsesBlocksCommentsAndLists) {
  const Config cfg = Config::parse(kText);
  EXPECT_EQ(cfg.str("operator.c", ""), "piecewise(abs(x) < pi, 0, -1)");
  EXPECT_EQ(cfg.line_of("operator.c"), 5);
  const auto bps = cfg.numbers("operator.breakpoints");
  ASSERT_EQ(bps.size(), 2u);
  EXPECT_DOUBLE_EQ(bps[1], kPi);
  EXPECT_TRUE(cfg.boolean("domain.unbounded", false));
  EXPECT_TRUE(cfg.has_block("solve"));
  EXPECT_FALSE(cfg.has_block("sweep"));
  EXPECT_EQ(Config::split_list("min(1, 2), 3"), (std::vector<std::string>{"min(1, 2)", "3"}));
}

TEST(Config, TypedViews) {
  const Config cfg = Config::parse(kText);
  const DomainSpec dom = domain_from(cfg);
  EXPECT_EQ(dom.geometry, Geometry::full_line);
  const OperatorSpec op = operator_from(cfg, dom.dim());
  EXPECT_EQ(op.c(Point{4.0, 0.0}), -1.0);
  EXPECT_EQ(op.breakpoints.size(), 2u);
  const SolveBlock s = solve_from(cfg);
  EXPECT_EQ(s.tol, 1e-11);
  EXPECT_EQ(s.schedule, (std::vector<double>{2, 4, 8}));
  EXPECT_EQ(s.h, 0.01);
  EXPECT_FALSE(barrier_from(cfg, 1).has_value());
}

TEST(Config, OverridesReplaceFileValues) {
  Config cfg = Config::parse(kText);
  cfg.set("solve.tol=1e-6");
  cfg.set("sweep.values = 0, 1, 2");
  EXPECT_EQ(solve_from(cfg).tol, 1e-6);
  EXPECT_EQ(cfg.line_of("solve.tol"), 0);
  EXPECT_EQ(sweep_from(cfg).values.size(), 3u);
  EXPECT_EQ(config_error([&] { cfg.set("solve.nope=1"); }).field(), "solve.nope");
  EXPECT_THROW(cfg.set("solve.tol"), ConfigError);
}

TEST(Config, ErrorsNameLineAndField) {
  const ConfigError unknown_key = config_error([] { Config::parse("[solve]\nh = 0.1\nfoo = 2\n"); });
  EXPECT_EQ(unknown_key.line(), 3);
  EXPECT_EQ(unknown_key.field(), "solve.foo");
  const ConfigError unknown_block = config_error([] { Config::parse("\n[nope]\n"); });
  EXPECT_EQ(unknown_block.line(), 2);
  const ConfigError dup = config_error([] { Config::parse("[solve]\nh = 1\nh = 2\n"); });
  EXPECT_EQ(dup.line(), 3);
  EXPECT_EQ(config_error([] { Config::parse("h = 1\n"); }).line(), 1);
  EXPECT_EQ(config_error([] { Config::parse("[solve]\nh 1\n"); }).line(), 2);

  const Config bad_field = Config::parse("[operator]\nc = sin(x\n[domain]\ngeometry = full_line\n");
  const ConfigError syntax = config_error([&] { operator_from(bad_field, 1); });
  EXPECT_EQ(syntax.line(), 2);
  EXPECT_EQ(syntax.field(), "operator.c");

  const Config bad_number = Config::parse("[solve]\nh = x\n");
  EXPECT_EQ(config_error([&] { solve_from(bad_number); }).field(), "solve.h");
  const Config neg = Config::parse("[solve]\nh = -1\n");
  EXPECT_THROW(solve_from(neg), ConfigError);
  const Config geo = Config::parse("[domain]\ngeometry = torus\n");
  EXPECT_EQ(config_error([&] { domain_from(geo); }).line(), 2);
  const Config contra = Config::parse("[domain]\ngeometry = interval\nparams = 0, 1\nunbounded = true\n");
  EXPECT_EQ(config_error([&] { domain_from(contra); }).field(), "domain.unbounded");
  const Config params = Config::parse("[domain]\ngeometry = interval\nparams = 1\n");
  EXPECT_EQ(config_error([&] { domain_from(params); }).field(), "domain.params");
  EXPECT_THROW(Config::load("/nonexistent/path.cfg"), ConfigError);
}

TEST(Config, TwoDimensionalOperator) {
  const Config cfg = Config::parse("[operator]\na1 = 1\na2 = 2 + y^2\nc = x*y\n[domain]\ngeometry = rectangle\nparams = 0, 1, 0, 1\n");
  const DomainSpec dom = domain_from(cfg);
  const OperatorSpec op = operator_from(cfg, dom.dim());
  EXPECT_EQ(op.dim, 2);
  EXPECT_EQ(op.a_at(1, Point{0.0, 2.0}), 6.0);
  EXPECT_EQ(op.c(Point{2.0, 3.0}), 6.0);
  const Config mixed = Config::parse("[operator]\na = 1\n[domain]\ngeometry = disk\nparams = 0, 0, 1\n");
  EXPECT_THROW(operator_from(mixed, 2), ConfigError);
}

TEST(Config, BarrierAndWitnessBlocks) {
  const Config cfg = Config::parse(
      "[barrier]\nkind = super\nphi = cosh(x)\nbeta = exp(abs(x))\nlambda = -1\nradius = 8\n"
      "[witness]\nu = 1 - 1/(1+x^2)\nkind = decay\nh = 0.02\n");
  const auto b = barrier_from(cfg, 1);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->kind, CertificateKind::super);
  EXPECT_EQ(b->lambda, -1.0);
  EXPECT_EQ(certify_from(cfg, "barrier").radius, 8.0);
  const auto w = witness_from(cfg, 1);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kind, WitnessKind::decay);
  EXPECT_EQ(w->certify.h, 0.02);
  EXPECT_THROW(barrier_from(Config::parse("[barrier]\nphi = 1\n"), 1), ConfigError);
  EXPECT_THROW(witness_from(Config::parse("[witness]\nkind = plain\n"), 1), ConfigError);
}

TEST(Report, CsvAndJsonShapes) {
  Table t("eig", {"h", "lambda", "method"});
  t.add({0.5, 9.869604401089358, std::string("power")});
  t.add({static_cast<long long>(3), -kInf, std::string("a,b")});
  EXPECT_EQ(to_csv(t), "# eigenlab eig schema v1\nh,lambda,method\n0.5,9.869604401089358,power\n3,-inf,\"a,b\"\n");
  const auto j = to_json(t);
  EXPECT_EQ(j["rows"][1]["lambda"], "-inf");
  EXPECT_EQ(j["version"], kSchemaVersion);
  EXPECT_THROW(t.add({1.0}), InvariantViolation);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(std::nan("")), "nan");
}
