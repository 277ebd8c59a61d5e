// eigenlab: config-driven front end. Exit codes: 0 ok, 1 config, 2 numeric,
// 3 invariant.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eigenlab/eigenlab.hpp"

namespace {

using namespace eigenlab;

constexpr int kOk = 0;
constexpr int kConfig = 1;
constexpr int kNumeric = 2;
constexpr int kInvariant = 3;

struct Globals {
  std::string config;
  std::vector<std::string> sets;
  std::string out = "out";
  int threads = 0;
  std::optional<double> tol;
};

Config load_config(const Globals& g, bool required = true) {
  Config cfg;
  if (!g.config.empty()) {
    cfg = Config::load(g.config);
  } else if (required) {
    throw ConfigError(0, "--config", "a config file is required for this command");
  }
  for (const auto& s : g.sets) cfg.set(s);
  if (g.tol) cfg.set("solve.tol=" + format_double(*g.tol));
  return cfg;
}

struct Problem {
  DomainSpec dom;
  OperatorSpec op;
  SolveBlock solve;
};

Problem load_problem(const Config& cfg) {
  Problem p;
  p.dom = domain_from(cfg);
  p.op = operator_from(cfg, p.dom.dim());
  p.solve = solve_from(cfg);
  return p;
}

int finish(const Report& rep, const Globals& g, bool invariants_ok, const std::string& line) {
  rep.write(g.out);
  std::printf("%s\n", line.c_str());
  return invariants_ok ? kOk : kInvariant;
}

long long as_ll(std::size_t n) { return static_cast<long long>(n); }

Table exhaustion_table(const ExhaustionReport& ex, const std::string& name, const std::string& provenance) {
  Table t(name, {"r", "h", "lambda", "coarse", "fine", "err", "provenance"});
  for (const auto& row : ex.rows) t.add({row.r, row.h, row.lambda, row.coarse, row.fine, row.err, provenance});
  return t;
}

nlohmann::json exhaustion_summary(const ExhaustionReport& ex) {
  return {{"extrapolated", json_number(ex.extrapolated)},
          {"model", to_string(ex.model)},
          {"monotone", ex.monotone},
          {"slack", json_number(ex.slack)},
          {"rms_inverse_square", json_number(ex.rms_inverse_square)},
          {"rms_exponential", json_number(ex.rms_exponential)},
          {"kappa", json_number(ex.kappa)},
          {"length_offset", json_number(ex.length_offset)},
          {"heuristic", ex.heuristic},
          {"note", ex.note}};
}

// ---------------------------------------------------------------------------

int cmd_eig(const Globals& g) {
  const Config cfg = load_config(g);
  const Problem p = load_problem(cfg);
  if (!p.dom.bounded()) throw ConfigError(cfg.line_of("domain.geometry"), "domain.geometry", "eig needs a bounded domain");
  const BoundedSolve bs = solve_bounded(p.op, p.dom, p.solve.h, p.solve.tol, p.solve.max_iter, p.solve.scheme);
  Report rep{"eig"};
  Table& t = rep.add(Table("eig", {"h", "nodes", "lambda", "lambda_h", "lambda_h2", "error_estimate", "residual",
                                   "iterations", "method", "provenance"}));
  t.add({p.solve.h, as_ll(bs.fine_grid->size()), bs.extrapolated, bs.coarse.lambda, bs.fine.lambda, bs.error_estimate,
         bs.fine.residual, static_cast<long long>(bs.fine.iterations), bs.fine.method,
         std::string("Perron root of the Dirichlet discretization, Richardson order ") + std::to_string(bs.order)});
  if (p.solve.eigenfunction) {
    Table& phi = rep.add(Table("phi", {"x", "y", "phi", "provenance"}));
    for (std::size_t k = 0; k < bs.fine_grid->size(); ++k)
      phi.add({bs.fine_grid->points[k].x, bs.fine_grid->points[k].y, bs.fine.phi[static_cast<Eigen::Index>(k)],
               "positive Perron vector, max normalized"});
  }
  const bool positive = (bs.fine.phi.array() > 0.0).all();
  std::vector<Check> checks{{"eigenvector positive", positive, bs.fine.phi.minCoeff(), 0.0,
                             "Perron structure of the discrete operator"}};
  rep.add(checks_table(checks));
  rep.summary = {{"lambda", json_number(bs.extrapolated)}, {"order", bs.order}, {"operator_self_adjoint", p.op.self_adjoint()}};
  return finish(rep, g, all_ok(checks), "lambda = " + format_double(bs.extrapolated));
}

int cmd_exhaust(const Globals& g) {
  const Config cfg = load_config(g);
  const Problem p = load_problem(cfg);
  ExhaustOptions opt = exhaust_options(p.solve, g.threads);
  opt.throw_on_nonmonotone = false;
  ExhaustionReport ex;
  std::string provenance;
  if (p.dom.bounded()) {
    ex = exterior_approach(p.op, p.dom, p.solve.schedule, p.solve.h, opt);
    provenance = "outer approximation Omega + B_{1/n}; continuity from outside";
  } else {
    ex = exhaust_lambda1(p.op, p.dom, p.solve.schedule, opt);
    provenance = "truncation Omega & B_r; lambda1 nonincreasing under domain inclusion";
  }
  Report rep{"exhaust"};
  rep.add(exhaustion_table(ex, "exhaust", provenance));
  std::vector<Check> checks{{"monotone within slack", ex.monotone, ex.slack, ex.slack,
                             "monotonicity of lambda1 with respect to the domain"}};
  rep.add(checks_table(checks));
  rep.summary = exhaustion_summary(ex);
  return finish(rep, g, all_ok(checks),
                "extrapolated = " + format_double(ex.extrapolated) + " (" + to_string(ex.model) + ")");
}

int cmd_tail(const Globals& g) {
  const Config cfg = load_config(g);
  const Problem p = load_problem(cfg);
  if (p.dom.bounded()) throw ConfigError(cfg.line_of("domain.geometry"), "domain.geometry", "tail needs an unbounded domain");
  ExhaustOptions eopt = exhaust_options(p.solve, g.threads);
  const ExhaustionReport ex = exhaust_lambda1(p.op, p.dom, p.solve.schedule, eopt);
  TailOptions topt;
  topt.r = cfg.number("tail.r", std::max(1.0, p.solve.schedule.back() / 4.0));
  topt.R_schedule = cfg.numbers("tail.schedule", default_tail_schedule(topt.r));
  topt.exhaust = eopt;
  const DoublePrimeReport dp = lambda_doubleprime_interval(p.op, p.dom, ex.extrapolated, topt);
  Report rep{"tail"};
  Table& t = rep.add(Table("tail", {"quantity", "value", "provenance"}));
  t.add({"lambda1", ex.extrapolated, "exhaustion limit"});
  t.add({"r", dp.r, "exterior radius"});
  t.add({"-sup c beyond r", -dp.tail_c, "lambda1'' >= -sup c on exterior sets"});
  t.add({"lambda1 of exterior set", dp.tail_lambda, "exterior characterization of lambda1''"});
  t.add({"lambda1'' lo", dp.interval.lo, dp.interval.lo_source});
  t.add({"lambda1'' hi", dp.interval.hi, dp.interval.hi_source});
  if (!dp.periodic && std::isfinite(ex.extrapolated)) {
    const TailReport tr = tail_lambda1(p.op, p.dom, topt.r, topt.R_schedule, topt.exhaust);
    rep.add(exhaustion_table(tr.exhaustion, "exterior", "exterior set (|x| > r) & B_R"));
  }
  std::vector<Check> checks{
      {"lambda1'' lo <= lambda1'' hi", dp.interval.lo <= dp.interval.hi, dp.interval.lo, dp.interval.hi,
       "bracket consistency"},
      {"lambda1'' hi <= lambda1", dp.interval.hi <= ex.extrapolated + solve_from(cfg).margin, dp.interval.hi,
       ex.extrapolated, "lambda1'' <= lambda1 (exterior characterization)"}};
  rep.add(checks_table(checks));
  rep.summary = {{"lo", json_number(dp.interval.lo)}, {"hi", json_number(dp.interval.hi)},
                 {"heuristic", dp.interval.heuristic}};
  return finish(rep, g, all_ok(checks),
                "lambda1'' in [" + format_double(dp.interval.lo) + ", " + format_double(dp.interval.hi) + "]");
}

AnalysisOptions analysis_from(const Config& cfg, const Problem& p, int threads) {
  AnalysisOptions ao;
  ao.schedule = p.solve.schedule;
  ao.h = p.solve.h;
  ao.tol = p.solve.margin;
  ao.exhaust = exhaust_options(p.solve, threads);
  ao.tail.r = cfg.number("tail.r", 0.0);
  ao.tail.R_schedule = cfg.numbers("tail.schedule");
  if (auto b = barrier_from(cfg, p.op.dim)) {
    ao.certificates.push_back(*b);
    ao.certify = certify_from(cfg, "barrier");
  }
  if (auto w = witness_from(cfg, p.op.dim)) {
    ao.witness = w->u;
    ao.witness_kind = w->kind;
    if (!cfg.has_block("barrier")) ao.certify = w->certify;
  }
  return ao;
}

Table relations_table(const RelationsReport& rr) {
  Table t("relations", {"quantity", "lo", "hi", "provenance"});
  for (const auto& row : rr.rows) t.add({row.quantity, row.lo, row.hi, row.source});
  return t;
}

int cmd_relations(const Globals& g) {
  const Config cfg = load_config(g);
  const Problem p = load_problem(cfg);
  const Analysis an = analyze(p.op, p.dom, analysis_from(cfg, p, g.threads));
  const RelationsReport rr = relations_evaluate(an);
  Report rep{"relations"};
  rep.add(relations_table(rr));
  rep.add(checks_table(rr.checks));
  rep.summary = {{"growth", to_string(an.growth.verdict)},
                 {"classifier", to_string(an.classifier.verdict)},
                 {"classifier_trace", an.classifier.trace},
                 {"rejected_certificates", an.rejected},
                 {"tol", an.tol}};
  return finish(rep, g, rr.ok(), rr.ok() ? "relations chain holds" : "relations chain VIOLATED");
}

int cmd_mp(const Globals& g) {
  const Config cfg = load_config(g);
  const Problem p = load_problem(cfg);
  const Analysis an = analyze(p.op, p.dom, analysis_from(cfg, p, g.threads));
  const MPVerdict v = mp_verdict(an);
  Report rep{"mp"};
  Table& t = rep.add(Table("mp", {"item", "value", "provenance"}));
  t.add({"verdict", to_string(v.verdict), "MP holds if lambda1'' > 0 and ABC3; holds only if lambda1' >= 0"});
  for (const auto& b : v.basis) t.add({"basis", b, "decision trace"});
  if (an.witness) {
    const WitnessReport& w = *an.witness;
    t.add({"witness", w.u.to_string(), std::string("accepted ") + to_string(w.kind) + " witness"});
    t.add({"witness max u", format_double(w.max_u), "positive somewhere"});
    t.add({"witness min Lu (relative)", format_double(w.min_Lu_rel), "Lu >= 0 off the kink band"});
    t.add({"witness boundary max", format_double(w.boundary_max), "u <= 0 on the boundary"});
  } else if (!an.witness_failure.empty()) {
    t.add({"witness", an.witness_failure, "rejected witness"});
  }
  const RelationsReport rr = relations_evaluate(an);
  rep.add(relations_table(rr));
  rep.add(checks_table(rr.checks));
  rep.summary = {{"verdict", to_string(v.verdict)}, {"basis", v.basis}, {"witness_accepted", an.witness && an.witness->accepted}};
  return finish(rep, g, rr.ok(), std::string("MP verdict: ") + to_string(v.verdict));
}

int cmd_sweep(const Globals& g) {
  const Config cfg = load_config(g);
  const Problem p = load_problem(cfg);
  const SweepBlock sb = sweep_from(cfg);
  SweepOptions so;
  so.radius = sb.radius;
  so.h = sb.h;
  so.band = sb.band;
  so.threads = g.threads;
  const SweepTable st = sb.parameter == "c" ? sweep_c(p.op, p.dom, sb.values, so) : sweep_a(p.op, p.dom, sb.values, so);
  Report rep{"sweep"};
  Table& t = rep.add(Table("sweep", {st.parameter, "lambda", "provenance"}));
  nlohmann::json runtimes = nlohmann::json::array();
  for (const auto& row : st.rows) {
    t.add({row.param, row.lambda, "Perron root on a fixed grid"});
    runtimes.push_back(row.runtime);
  }
  rep.add(checks_table(st.checks));
  rep.summary = {{"parameter", st.parameter}, {"h", st.h}, {"radius", st.radius},
                 {"limit_target", json_number(st.limit_target)}, {"limit_estimate", json_number(st.limit_estimate)},
                 {"fitted_slope", json_number(st.fitted_slope)}, {"runtime_seconds", runtimes}};
  const bool ok = all_ok(st.checks);
  return finish(rep, g, ok, std::string("sweep over ") + st.parameter + (ok ? ": all checks pass" : ": checks FAILED"));
}

int cmd_scenario_list(const Globals& g) {
  Report rep{"scenario"};
  Table& t = rep.add(Table("scenarios", {"id", "name", "description", "provenance"}));
  for (const auto& s : list_scenarios()) t.add({s.id, s.name, s.description, "catalog"});
  rep.write(g.out);
  for (const auto& s : list_scenarios()) std::printf("%-4s %-22s %s\n", s.id.c_str(), s.name.c_str(), s.description.c_str());
  return kOk;
}

int cmd_scenario_run(const Globals& g, std::string id) {
  if (id.empty()) {
    const Config cfg = load_config(g);
    id = cfg.require("scenario.id");
  }
  ScenarioOptions so;
  so.threads = g.threads;
  const ScenarioReport sr = run_scenario(id, so);
  Report rep{"scenario"};
  Table& t = rep.add(Table("scenario", {"quantity", "value", "target", "tolerance", "relation", "pass", "provenance"}));
  for (const auto& e : sr.expectations)
    t.add({e.quantity, e.value, e.target, e.tolerance, e.relation, e.pass ? "true" : "false", to_string(e.provenance)});
  if (sr.exhaustion) rep.add(exhaustion_table(*sr.exhaustion, "exhaustion", "truncation sequence"));
  rep.summary = {{"id", sr.id}, {"name", sr.name}, {"pass", sr.pass()}, {"notes", sr.notes}};
  return finish(rep, g, sr.pass(), sr.id + " " + (sr.pass() ? "PASS" : "FAIL"));
}

int exit_code(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::config: return kConfig;
    case ErrorCategory::numeric: return kNumeric;
    case ErrorCategory::invariant: return kInvariant;
  }
  return kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized principal eigenvalues of elliptic operators"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  double tol = 0.0;
  app.add_option("--config", g.config, "Config file")->check(CLI::ExistingFile);
  app.add_option("--set", g.sets, "Override block.key=value (repeatable)");
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (default: EIGENLAB_THREADS or 1)");
  auto* tol_opt = app.add_option("--tol", tol, "Eigensolver tolerance (overrides solve.tol)");

  auto* eig = app.add_subcommand("eig", "Principal eigenvalue on a bounded domain");
  auto* exhaust = app.add_subcommand("exhaust", "lambda1 by domain exhaustion");
  auto* tail = app.add_subcommand("tail", "Bracket for lambda1'' from exterior sets");
  auto* relations = app.add_subcommand("relations", "lambda1, lambda1', lambda1'' and their chain");
  auto* mp = app.add_subcommand("mp", "Maximum principle verdict");
  auto* sweep = app.add_subcommand("sweep", "Coefficient scaling sweep");
  auto* scenario = app.add_subcommand("scenario", "Scenario catalog");
  scenario->require_subcommand(1);
  auto* list = scenario->add_subcommand("list", "List scenarios");
  auto* run = scenario->add_subcommand("run", "Run one scenario");
  std::string scenario_id;
  run->add_option("id", scenario_id, "Scenario id, e.g. S1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  if (tol_opt->count() > 0) g.tol = tol;

  try {
    if (*eig) return cmd_eig(g);
    if (*exhaust) return cmd_exhaust(g);
    if (*tail) return cmd_tail(g);
    if (*relations) return cmd_relations(g);
    if (*mp) return cmd_mp(g);
    if (*sweep) return cmd_sweep(g);
    if (*list) return cmd_scenario_list(g);
    if (*run) return cmd_scenario_run(g, scenario_id);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kNumeric;
  }
  return kConfig;
}
