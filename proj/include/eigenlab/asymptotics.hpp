#ifndef EIGENLAB_ASYMPTOTICS_HPP
#define EIGENLAB_ASYMPTOTICS_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "eigenlab/check.hpp"
#include "eigenlab/discretize.hpp"
#include "eigenlab/opspec.hpp"
#include "eigenlab/parallel.hpp"
#include "eigenlab/perron.hpp"
#include "eigenlab/unbounded.hpp"

namespace eigenlab {

/// Principal eigenvalue to rounding accuracy: Sturm bisection when the
/// matrix is tridiagonal, a tight Perron solve otherwise.
inline double precise_lambda(const DiscreteOperator& D) {
  if (D.size() > 1 && D.irreducible && detail::is_tridiagonal(D.A)) {
    try {
      return tridiagonal_eigenvalue(D, 0);
    } catch (const NotSymmetric&) {
    }
  }
  return principal_eig(D, 1e-13, 200000).lambda;
}

struct SweepOptions {
  double radius = 32.0;  // truncation for unbounded domains
  double h = 0.01;
  double band = 0.05;    // relative acceptance band for limit trends
  int threads = 0;
};

struct SweepRow {
  double param = 0.0;
  double lambda = 0.0;
  double runtime = 0.0;  // seconds
};

struct SweepTable {
  std::string parameter;  // "gamma" or "alpha"
  std::vector<SweepRow> rows;
  double h = 0.0;
  double radius = 0.0;
  std::vector<double> concavity_margins;  // one per consecutive triple
  std::vector<double> lipschitz_ratios;   // |d lambda / d param| per step
  double sup_c = 0.0;
  double limit_target = 0.0;
  double limit_estimate = 0.0;  // lambda/gamma at the largest gamma, or fitted alpha -> 0 limit
  double fitted_slope = 0.0;
  std::vector<Check> checks;
};

namespace detail {

inline DomainSpec sweep_region(const DomainSpec& dom, double radius) {
  return dom.bounded() ? dom : dom.truncation(radius);
}

inline double timed_lambda(const DiscreteOperator& D, double& seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const double l = precise_lambda(D);
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return l;
}

// Midpoint concavity margin for possibly uneven parameter steps.
inline std::vector<double> concavity_margins(const std::vector<SweepRow>& rows) {
  std::vector<double> m;
  for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
    const double t = (rows[i].param - rows[i - 1].param) / (rows[i + 1].param - rows[i - 1].param);
    const double chord = (1.0 - t) * rows[i - 1].lambda + t * rows[i + 1].lambda;
    m.push_back(rows[i].lambda - chord);
  }
  return m;
}

inline void check_params(std::vector<double>& v, bool positive) {
  std::sort(v.begin(), v.end());
  if (v.size() < 3) throw PreconditionFailed("sweeps need at least 3 parameter values");
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) throw PreconditionFailed("duplicate sweep parameter");
  if (positive && !(v.front() > 0.0)) throw PreconditionFailed("alpha values must be positive");
}

}  // namespace detail

/// lambda_1 of a_ij d_ij + b_i d_i + gamma c on one fixed grid.
inline SweepTable sweep_c(const OperatorSpec& op, const DomainSpec& dom, std::vector<double> gammas,
                          const SweepOptions& opt = {}) {
  detail::check_params(gammas, false);
  if (std::find(gammas.begin(), gammas.end(), 0.0) == gammas.end())
    throw PreconditionFailed("the gamma list must contain 0");
  const DomainSpec region = detail::sweep_region(dom, opt.radius);
  SweepTable t;
  t.parameter = "gamma";
  t.h = opt.h;
  t.radius = dom.bounded() ? dom.circumradius() : opt.radius;
  t.rows = parallel_map<SweepRow>(
      gammas.size(),
      [&](std::size_t i) {
        SweepRow r;
        r.param = gammas[i];
        r.lambda = detail::timed_lambda(discretize(op.scaled_c(gammas[i]), region, opt.h), r.runtime);
        return r;
      },
      opt.threads);
  const auto grid = std::make_shared<Grid>(build_grid(region, opt.h, op));
  double sup_abs = 0.0;
  t.sup_c = -kInf;
  for (const Point& p : grid->points) {
    const double cv = detail::coeff_at(op.c, p, op);
    sup_abs = std::max(sup_abs, std::fabs(cv));
    t.sup_c = std::max(t.sup_c, cv);
  }
  t.concavity_margins = detail::concavity_margins(t.rows);
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i)
    t.lipschitz_ratios.push_back(std::fabs(t.rows[i + 1].lambda - t.rows[i].lambda) /
                                 (t.rows[i + 1].param - t.rows[i].param));
  const SweepRow& last = t.rows.back();
  const SweepRow& prev = t.rows[t.rows.size() - 2];
  t.limit_target = -t.sup_c;
  t.limit_estimate = last.lambda / last.param;
  t.fitted_slope = (last.lambda - prev.lambda) / (last.param - prev.param);

  const SweepRow& zero = *std::find_if(t.rows.begin(), t.rows.end(),
                                       [](const SweepRow& r) { return r.param == 0.0; });
  const double min_margin = t.concavity_margins.empty()
                                ? 0.0
                                : *std::min_element(t.concavity_margins.begin(), t.concavity_margins.end());
  const double max_ratio = *std::max_element(t.lipschitz_ratios.begin(), t.lipschitz_ratios.end());
  t.checks.push_back({"lambda(0) >= -tol", zero.lambda >= -1e-8, zero.lambda, -1e-8,
                      "scaling in c: lambda at gamma = 0 is nonnegative"});
  t.checks.push_back({"midpoint concavity margin >= -1e-8", min_margin >= -1e-8, min_margin, -1e-8,
                      "scaling in c: lambda is concave in gamma"});
  t.checks.push_back({"|d lambda/d gamma| <= sup|c| + tol", max_ratio <= sup_abs + 1e-8, max_ratio,
                      sup_abs + 1e-8, "Lipschitz dependence on c with constant sup|c|"});
  const double dev = std::fabs(t.limit_estimate - t.limit_target);
  const double allowed = opt.band * std::max(std::fabs(t.limit_target), 1e-12);
  t.checks.push_back({"lambda(gamma_max)/gamma_max within band of -sup c", dev <= allowed,
                      t.limit_estimate, t.limit_target,
                      "scaling in c: lambda(gamma)/gamma -> -sup c"});
  return t;
}

/// lambda_1 of alpha a_ij d_ij + b_i d_i + c on one fixed grid.
inline SweepTable sweep_a(const OperatorSpec& op, const DomainSpec& dom, std::vector<double> alphas,
                          const SweepOptions& opt = {}) {
  detail::check_params(alphas, true);
  const DomainSpec region = detail::sweep_region(dom, opt.radius);
  SweepTable t;
  t.parameter = "alpha";
  t.h = opt.h;
  t.radius = dom.bounded() ? dom.circumradius() : opt.radius;
  std::vector<double> crosscheck(alphas.size());
  t.rows = parallel_map<SweepRow>(
      alphas.size(),
      [&](std::size_t i) {
        SweepRow r;
        r.param = alphas[i];
        r.lambda = detail::timed_lambda(discretize(op.scaled_a(alphas[i]), region, opt.h), r.runtime);
        // alpha * lambda_1 of a d^2 + (b/alpha) d + c/alpha
        OperatorSpec scaled = op.with_c(op.c.scaled(1.0 / alphas[i]));
        for (auto& bi : scaled.b) bi = bi.scaled(1.0 / alphas[i]);
        crosscheck[i] = alphas[i] * precise_lambda(discretize(scaled, region, opt.h));
        return r;
      },
      opt.threads);
  const auto grid = std::make_shared<Grid>(build_grid(region, opt.h, op));
  t.sup_c = -kInf;
  for (const Point& p : grid->points) t.sup_c = std::max(t.sup_c, detail::coeff_at(op.c, p, op));
  t.concavity_margins = detail::concavity_margins(t.rows);
  for (std::size_t i = 0; i + 1 < t.rows.size(); ++i)
    t.lipschitz_ratios.push_back(std::fabs(t.rows[i + 1].lambda - t.rows[i].lambda) /
                                 (t.rows[i + 1].param - t.rows[i].param));

  double worst_cross = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    worst_cross = std::max(worst_cross, std::fabs(crosscheck[i] - t.rows[i].lambda) /
                                            std::max(1.0, std::fabs(t.rows[i].lambda)));
  t.checks.push_back({"scaled-coefficient cross-check", worst_cross <= 1e-8, worst_cross, 1e-8,
                      "alpha L^(b,c)_(1/alpha) reduction of the a-scaling"});

  if (op.self_adjoint()) {
    double worst_step = kInf;
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i)
      worst_step = std::min(worst_step, t.rows[i + 1].lambda - t.rows[i].lambda);
    const double min_margin = t.concavity_margins.empty()
                                  ? 0.0
                                  : *std::min_element(t.concavity_margins.begin(), t.concavity_margins.end());
    t.checks.push_back({"nondecreasing in alpha", worst_step >= -1e-8, worst_step, -1e-8,
                        "scaling in a: lambda nondecreasing in alpha"});
    t.checks.push_back({"midpoint concavity margin >= -1e-8", min_margin >= -1e-8, min_margin, -1e-8,
                        "scaling in a: lambda concave in alpha"});
  }

  // alpha -> 0: fit lambda = L0 + C sqrt(alpha) on the three smallest values.
  {
    std::vector<double> g, y;
    for (std::size_t i = 0; i < 3; ++i) {
      g.push_back(std::sqrt(t.rows[i].param));
      y.push_back(t.rows[i].lambda);
    }
    const auto fit = detail::fit_affine(g, y);
    t.limit_estimate = fit.intercept;
    t.fitted_slope = fit.slope;
    t.limit_target = -t.sup_c;
    const double dev = std::fabs(t.limit_estimate - t.limit_target);
    const double allowed = opt.band * std::max(std::fabs(t.limit_target), 1e-12);
    t.checks.push_back({"small-alpha limit within band of -sup c", dev <= allowed, t.limit_estimate,
                        t.limit_target, "scaling in a: lambda(alpha) -> -sup c as alpha -> 0"});
  }
  if (!dom.bounded()) {
    const double r = opt.radius / 8.0;
    const double ls = tail_c_sup(op, dom, r);
    const double li = -tail_c_sup(op.scaled_c(-1.0), dom, r);
    const double val = t.rows.back().lambda;
    const bool inside = val >= -ls - opt.band && val <= -li + opt.band;
    t.checks.push_back({"large-alpha value in [-limsup c, -liminf c]", inside, val, -ls - opt.band,
                        "scaling in a: bounds by limsup and liminf of c at infinity"});
  }
  return t;
}

struct PerturbReport {
  double lambda_base = 0.0;
  double lambda_perturbed = 0.0;
  double delta_sup = 0.0;  // sup |delta| on the grid nodes
  double change = 0.0;     // lambda_perturbed - lambda_base
  double ratio = 0.0;      // |change| / delta_sup
  bool nonnegative_delta = false;
  std::vector<Check> checks;
};

/// Lipschitz-1 and monotone dependence on the zeroth-order coefficient.
inline PerturbReport perturb_c(const OperatorSpec& op, const DomainSpec& dom, const ScalarField& delta,
                               const SweepOptions& opt = {}) {
  const DomainSpec region = detail::sweep_region(dom, opt.radius);
  const auto D0 = discretize(op, region, opt.h);
  const OperatorSpec pert = op.with_c(op.c.plus(delta));
  const auto D1 = discretize(pert, region, opt.h);
  PerturbReport rep;
  rep.lambda_base = precise_lambda(D0);
  rep.lambda_perturbed = precise_lambda(D1);
  rep.change = rep.lambda_perturbed - rep.lambda_base;
  double dmin = kInf;
  for (const Point& p : D0.grid->points) {
    const double d = detail::coeff_at(pert.c, p, pert) - detail::coeff_at(op.c, p, op);
    rep.delta_sup = std::max(rep.delta_sup, std::fabs(d));
    dmin = std::min(dmin, d);
  }
  rep.nonnegative_delta = dmin >= 0.0;
  rep.ratio = rep.delta_sup > 0.0 ? std::fabs(rep.change) / rep.delta_sup : 0.0;
  // bisection accuracy scales with the matrix norm
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::fabs(rep.lambda_base), D0.inf_norm(), D1.inf_norm()});
  rep.checks.push_back({"|change| <= sup|delta|", std::fabs(rep.change) <= rep.delta_sup + slack,
                        std::fabs(rep.change), rep.delta_sup + slack,
                        "lambda is Lipschitz in c with constant 1"});
  if (rep.nonnegative_delta)
    rep.checks.push_back({"delta >= 0 implies change <= 0", rep.change <= slack, rep.change, slack,
                          "lambda is nonincreasing in c"});
  return rep;
}

struct PerturbARow {
  double eps = 0.0;
  double delta_a = 0.0;  // sum over i of sup |a1_ii - a2_ii|
  double change = 0.0;
  double ratio = 0.0;
};

struct PerturbAReport {
  std::vector<PerturbARow> rows;
  double max_ratio = 0.0;
  std::vector<Check> checks;
};

/// |lambda(L1) - lambda(L2)| / sum sup|a1 - a2| for a pair differing only in a.
inline PerturbARow perturb_a(const OperatorSpec& op1, const OperatorSpec& op2, const DomainSpec& dom,
                             const SweepOptions& opt = {}) {
  if (op1.dim != op2.dim) throw PreconditionFailed("operators differ in dimension");
  const DomainSpec region = detail::sweep_region(dom, opt.radius);
  ellipticity_range(op1, region, 4096);
  ellipticity_range(op2, region, 4096);
  const auto D1 = discretize(op1, region, opt.h);
  const auto D2 = discretize(op2, region, opt.h);
  PerturbARow row;
  for (int i = 0; i < op1.dim; ++i) {
    double s = 0.0;
    for (const Point& p : D1.grid->points) s = std::max(s, std::fabs(op1.a_at(i, p) - op2.a_at(i, p)));
    row.delta_a += s;
  }
  row.change = precise_lambda(D2) - precise_lambda(D1);
  row.ratio = row.delta_a > 0.0 ? std::fabs(row.change) / row.delta_a : 0.0;
  return row;
}

/// Ladder a -> a + eps * da; the ratio must stay bounded as eps shrinks.
inline PerturbAReport perturb_a_ladder(const OperatorSpec& op, const DomainSpec& dom,
                                       const ScalarField& da, const std::vector<double>& eps_list,
                                       const SweepOptions& opt = {}) {
  PerturbAReport rep;
  for (double eps : eps_list) {
    OperatorSpec op2 = op;
    for (auto& ai : op2.a) ai = ai.plus(da.scaled(eps));
    PerturbARow row = perturb_a(op, op2, dom, opt);
    row.eps = eps;
    rep.rows.push_back(row);
    rep.max_ratio = std::max(rep.max_ratio, row.ratio);
  }
  const double first = rep.rows.empty() ? 0.0 : rep.rows.front().ratio;
  const bool bounded = std::isfinite(rep.max_ratio) && rep.max_ratio <= 10.0 * std::max(first, 1.0);
  rep.checks.push_back({"ratio stays bounded over the ladder", bounded, rep.max_ratio,
                        10.0 * std::max(first, 1.0),
                        "lambda depends Lipschitz-continuously on a"});
  return rep;
}

struct SemicontinuityReport {
  double lambda_target = 0.0;
  std::vector<std::pair<int, double>> rows;  // (n, lambda_n)
  bool uniform = false;
  std::vector<Check> checks;
};

/// Default sequence: mollifications at scale 1/n of c = -1 on (-1, 1), 0 outside.
inline OperatorSpec mollified_step(int n) {
  const std::string k = expr::format_number(static_cast<double>(n));
  return OperatorSpec::one_d("1", "0",
                             "-(tanh(" + k + "*(x+1)) - tanh(" + k + "*(x-1)))/2", {});
}

inline OperatorSpec step_target() {
  return OperatorSpec::one_d("1", "0", "piecewise(abs(x) < 1, -1, 0)", {-1.0, 1.0});
}

/// Upper semicontinuity of lambda_1 under local coefficient convergence;
/// with `uniform` also two-sided convergence.
inline SemicontinuityReport semicontinuity_probe(const std::function<OperatorSpec(int)>& builder,
                                                 const OperatorSpec& target, const DomainSpec& dom,
                                                 const std::vector<int>& ns, bool uniform = false,
                                                 double tol = 1e-3, const SweepOptions& opt = {}) {
  if (ns.empty()) throw PreconditionFailed("empty sequence");
  const DomainSpec region = detail::sweep_region(dom, opt.radius);
  SemicontinuityReport rep;
  rep.uniform = uniform;
  rep.lambda_target = solve_bounded(target, region, opt.h).extrapolated;
  auto vals = parallel_map<double>(
      ns.size(), [&](std::size_t i) { return solve_bounded(builder(ns[i]), region, opt.h).extrapolated; },
      opt.threads);
  for (std::size_t i = 0; i < ns.size(); ++i) rep.rows.emplace_back(ns[i], vals[i]);
  // limsup is read off the last member of the sequence
  rep.checks.push_back({"lambda_n at largest n <= lambda + tol", vals.back() <= rep.lambda_target + tol, vals.back(),
                        rep.lambda_target + tol, "upper semicontinuity of lambda under local convergence"});
  if (uniform) {
    const double last = std::fabs(vals.back() - rep.lambda_target);
    rep.checks.push_back({"|lambda_n - lambda| -> 0", last <= tol, last, tol,
                          "continuity of lambda under uniform convergence"});
  }
  return rep;
}

}  // namespace eigenlab

#endif  // EIGENLAB_ASYMPTOTICS_HPP
