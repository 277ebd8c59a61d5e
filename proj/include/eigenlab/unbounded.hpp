#ifndef EIGENLAB_UNBOUNDED_HPP
#define EIGENLAB_UNBOUNDED_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "eigenlab/discretize.hpp"
#include "eigenlab/error.hpp"
#include "eigenlab/opspec.hpp"
#include "eigenlab/parallel.hpp"
#include "eigenlab/perron.hpp"

namespace eigenlab {

enum class FitModel { inverse_square, exponential, plateau, divergent, direct, none };

inline const char* to_string(FitModel m) {
  switch (m) {
    case FitModel::inverse_square: return "inverse-square";
    case FitModel::exponential: return "exponential";
    case FitModel::plateau: return "plateau";
    case FitModel::divergent: return "none";
    case FitModel::direct: return "direct";
    case FitModel::none: return "none";
  }
  return "?";
}

struct ExhaustionRow {
  double r = 0.0;       // truncation radius (or outer parameter)
  double h = 0.0;
  double lambda = 0.0;  // Richardson-extrapolated value
  double coarse = 0.0;
  double fine = 0.0;
  double err = 0.0;     // discretization-error estimate
};

struct ExhaustionReport {
  std::vector<ExhaustionRow> rows;
  bool monotone = true;
  bool increasing = false;  // expected direction: false for exhaustion
  double slack = 0.0;
  double extrapolated = 0.0;
  FitModel model = FitModel::none;
  double rms_inverse_square = kInf;
  double rms_exponential = kInf;
  double kappa = 0.0;          // exponential-model rate
  double length_offset = 0.0;  // inverse-square-model offset d in (r + d)^-2
  bool heuristic = true;
  std::string note;
};

class NonMonotoneExhaustion : public NonMonotone {
 public:
  NonMonotoneExhaustion(const std::string& message, ExhaustionReport report)
      : NonMonotone(message), report_(std::move(report)) {}
  const ExhaustionReport& report() const noexcept { return report_; }

 private:
  ExhaustionReport report_;
};

struct ExhaustOptions {
  std::function<double(double)> h_policy;  // default: min(0.01, 1/r)
  double tol = 1e-10;
  int max_iter = 50000;
  int threads = 0;
  bool throw_on_nonmonotone = true;
  DriftScheme scheme = DriftScheme::hybrid;

  double h_for(double r) const { return h_policy ? h_policy(r) : std::min(0.01, 1.0 / r); }
};

namespace detail {

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms = kInf;
};

// Least squares y = p + q * g.
inline LinearFit fit_affine(const std::vector<double>& g, const std::vector<double>& y) {
  const double n = static_cast<double>(g.size());
  double sg = 0, sy = 0, sgg = 0, sgy = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sg += g[i];
    sy += y[i];
    sgg += g[i] * g[i];
    sgy += g[i] * y[i];
  }
  LinearFit f;
  const double det = n * sgg - sg * sg;
  if (std::fabs(det) < 1e-300) {
    f.intercept = sy / n;
  } else {
    f.slope = (n * sgy - sg * sy) / det;
    f.intercept = (sy - f.slope * sg) / n;
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double e = y[i] - f.intercept - f.slope * g[i];
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

// y = p + q / (s + d)^2; the offset d absorbs the effective length of the
// inner region and is found by a grid search refined by golden section.
inline std::pair<LinearFit, double> fit_inverse_square(const std::vector<double>& s,
                                                       const std::vector<double>& y) {
  auto at = [&](double d) {
    std::vector<double> g;
    for (double v : s) g.push_back(1.0 / ((v + d) * (v + d)));
    return fit_affine(g, y);
  };
  const double lo = -0.9 * s.front(), hi = 4.0 * s.front();
  const int n = 400;
  double best_d = 0.0, best_rms = at(0.0).rms;
  for (int i = 0; i <= n; ++i) {
    const double d = lo + (hi - lo) * i / n;
    const double r = at(d).rms;
    if (r < best_rms) {
      best_rms = r;
      best_d = d;
    }
  }
  double a = std::max(lo, best_d - (hi - lo) / n), b = std::min(hi, best_d + (hi - lo) / n);
  const double phi = 0.6180339887498949;
  for (int i = 0; i < 80; ++i) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (at(c).rms < at(d).rms) b = d;
    else a = c;
  }
  const double d = at(0.5 * (a + b)).rms < best_rms ? 0.5 * (a + b) : best_d;
  return {at(d), d};
}

// y = p + q exp(-kappa s); kappa by a log-grid search refined by golden section.
inline std::pair<LinearFit, double> fit_exponential(const std::vector<double>& s,
                                                    const std::vector<double>& y) {
  auto at = [&](double kappa) {
    std::vector<double> g;
    for (double v : s) g.push_back(std::exp(-kappa * (v - s.front())));
    return fit_affine(g, y);
  };
  double best_k = 1.0;
  double best_rms = kInf;
  for (int i = 0; i <= 240; ++i) {
    const double k = std::pow(10.0, -3.0 + 5.0 * i / 240.0);
    const double r = at(k).rms;
    if (r < best_rms) {
      best_rms = r;
      best_k = k;
    }
  }
  double a = best_k / std::pow(10.0, 5.0 / 240.0), b = best_k * std::pow(10.0, 5.0 / 240.0);
  const double phi = 0.6180339887498949;
  for (int i = 0; i < 80; ++i) {
    const double c = b - phi * (b - a), d = a + phi * (b - a);
    if (at(c).rms < at(d).rms) b = d;
    else a = c;
  }
  const double k = 0.5 * (a + b);
  return {at(k), k};
}

/// Monotonicity, divergence detection and limit model for a row sequence.
/// `offset` turns radii into the length variable used by the fits.
inline void finalize_report(ExhaustionReport& rep, double offset) {
  const auto& rows = rep.rows;
  const std::size_t n = rows.size();
  rep.monotone = true;
  rep.slack = 0.0;
  std::vector<double> pair_slack(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double scale = std::max(1.0, std::max(std::fabs(rows[i].lambda), std::fabs(rows[i + 1].lambda)));
    pair_slack[i] = 10.0 * std::max(rows[i].err, rows[i + 1].err) + 1e-9 * scale;
    rep.slack = std::max(rep.slack, pair_slack[i]);
    const double step = rep.increasing ? rows[i].lambda - rows[i + 1].lambda
                                       : rows[i + 1].lambda - rows[i].lambda;
    if (step > pair_slack[i]) {
      rep.monotone = false;
      rep.note = "rows at r=" + expr::format_number(rows[i].r) + " and r=" +
                 expr::format_number(rows[i + 1].r) + " break monotonicity by " +
                 expr::format_number(step) + " (slack " + expr::format_number(pair_slack[i]) + ")";
    }
  }
  if (n == 0) return;
  rep.extrapolated = rows.back().lambda;
  if (n < 3) {
    rep.model = FitModel::none;
    return;
  }
  const double last = rows[n - 2].lambda - rows[n - 1].lambda;
  const double prev = rows[n - 3].lambda - rows[n - 2].lambda;
  if (!rep.increasing && last > pair_slack[n - 2] && prev > 0.0 && last >= 0.75 * prev &&
      rows.back().lambda < rows.front().lambda - 1.0) {
    rep.model = FitModel::divergent;
    rep.extrapolated = -kInf;
    return;
  }
  if (std::fabs(last) <= pair_slack[n - 2]) {
    rep.model = FitModel::plateau;
    return;
  }
  const std::size_t m = std::min<std::size_t>(n, 4);
  std::vector<double> s, y;
  for (std::size_t i = n - m; i < n; ++i) {
    s.push_back(rows[i].r - offset);
    y.push_back(rows[i].lambda);
  }
  const auto [inv, offset_d] = fit_inverse_square(s, y);
  rep.rms_inverse_square = inv.rms;
  rep.length_offset = offset_d;
  rep.model = FitModel::inverse_square;
  rep.extrapolated = inv.intercept;
  if (m >= 4) {
    const auto [ex, kappa] = fit_exponential(s, y);
    rep.rms_exponential = ex.rms;
    rep.kappa = kappa;
    if (ex.rms < inv.rms) {
      rep.model = FitModel::exponential;
      rep.extrapolated = ex.intercept;
    }
  }
}

inline ExhaustionRow solve_row(const OperatorSpec& op, const DomainSpec& region, double r,
                               double h, const ExhaustOptions& opt) {
  const BoundedSolve bs = solve_bounded(op, region, h, opt.tol, opt.max_iter, opt.scheme);
  return {r, h, bs.extrapolated, bs.coarse.lambda, bs.fine.lambda,
          bs.error_estimate + opt.tol * std::max(1.0, std::fabs(bs.fine.lambda))};
}

inline void check_schedule(const std::vector<double>& schedule, std::size_t min_size) {
  if (schedule.size() < min_size)
    throw PreconditionFailed("schedule needs at least " + std::to_string(min_size) + " entries");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
    if (!(schedule[i] < schedule[i + 1])) throw PreconditionFailed("schedule must be increasing");
  if (!(schedule.front() > 0.0)) throw PreconditionFailed("schedule entries must be positive");
}

}  // namespace detail

/// lambda_1 on an unbounded domain as the limit over truncations Omega & B_r
/// with Dirichlet data on the artificial boundary.
inline ExhaustionReport exhaust_lambda1(const OperatorSpec& op, const DomainSpec& dom,
                                        const std::vector<double>& schedule,
                                        const ExhaustOptions& opt = {}) {
  detail::check_schedule(schedule, 3);
  ExhaustionReport rep;
  rep.rows = parallel_map<ExhaustionRow>(
      schedule.size(),
      [&](std::size_t i) {
        const double r = schedule[i];
        return detail::solve_row(op, dom.truncation(r), r, opt.h_for(r), opt);
      },
      opt.threads);
  detail::finalize_report(rep, 0.0);
  if (!rep.monotone && opt.throw_on_nonmonotone)
    throw NonMonotoneExhaustion("exhaustion is not monotone: " + rep.note, rep);
  return rep;
}

/// Outer approximations Omega + B_{1/n} of a bounded domain; the last row
/// (r = +inf) is the direct solve on Omega.
inline ExhaustionReport exterior_approach(const OperatorSpec& op, const DomainSpec& dom,
                                          const std::vector<double>& outer_schedule, double h,
                                          const ExhaustOptions& opt = {}) {
  if (!dom.base_bounded()) throw PreconditionFailed("exterior approach needs a bounded domain");
  detail::check_schedule(outer_schedule, 2);
  std::vector<double> ns = outer_schedule;
  ns.push_back(kInf);
  ExhaustionReport rep;
  rep.increasing = true;
  rep.rows = parallel_map<ExhaustionRow>(
      ns.size(),
      [&](std::size_t i) {
        const double n = ns[i];
        const DomainSpec region = std::isfinite(n) ? dom.inflate(1.0 / n) : dom;
        return detail::solve_row(op, region, n, h, opt);
      },
      opt.threads);
  detail::finalize_report(rep, 0.0);
  rep.model = FitModel::direct;
  rep.extrapolated = rep.rows.back().lambda;
  if (!rep.monotone && opt.throw_on_nonmonotone)
    throw NonMonotoneExhaustion("exterior approach is not monotone: " + rep.note, rep);
  return rep;
}

struct TailReport {
  double r = 0.0;
  ExhaustionReport exhaustion;  // rows indexed by the outer radius R
  double value = 0.0;           // limit over R, infimum over components
  std::vector<double> component_values;  // at the largest R
};

inline std::vector<double> default_tail_schedule(double r) {
  return {r + 4.0, r + 8.0, r + 16.0, r + 32.0};
}

/// lambda_1 of the exterior set Omega \ B_r, by exhaustion in the outer
/// radius R; in 1D the minimum over connected components.
inline TailReport tail_lambda1(const OperatorSpec& op, const DomainSpec& dom, double r,
                               std::vector<double> R_schedule = {},
                               const ExhaustOptions& opt = {}) {
  if (!(r > 0.0)) throw PreconditionFailed("tail radius must be positive");
  if (R_schedule.empty()) R_schedule = default_tail_schedule(r);
  if (dom.bounded() && r >= dom.circumradius())
    throw EmptyTail("no points of the domain beyond r=" + expr::format_number(r));
  detail::check_schedule(R_schedule, 3);
  if (!(R_schedule.front() > r)) throw PreconditionFailed("outer radii must exceed r");
  const DomainSpec tail = dom.tail(r);
  TailReport out;
  out.r = r;
  std::vector<std::vector<double>> comps(R_schedule.size());
  out.exhaustion.rows = parallel_map<ExhaustionRow>(
      R_schedule.size(),
      [&](std::size_t i) {
        const double R = R_schedule[i];
        const DomainSpec region = tail.truncation(R);
        const double h = opt.h_for(R);
        if (region.dim() == 2) return detail::solve_row(op, region, R, h, opt);
        const auto parts = region.intervals();
        if (parts.empty()) throw EmptyTail("tail region is empty");
        ExhaustionRow best;
        best.lambda = kInf;
        for (const auto& iv : parts) {
          const ExhaustionRow row = detail::solve_row(op, DomainSpec::interval(iv.lo, iv.hi), R, h, opt);
          comps[i].push_back(row.lambda);
          if (row.lambda < best.lambda) best = row;
        }
        return best;
      },
      opt.threads);
  detail::finalize_report(out.exhaustion, r);
  out.value = out.exhaustion.extrapolated;
  out.component_values = comps.back();
  return out;
}

namespace detail {

// Sample points of tail(r) within |x| <= outer, densified towards |x| = r.
inline std::vector<Point> tail_samples(const DomainSpec& dom, double r, double outer, int n) {
  std::vector<Point> pts;
  const double start = r * (1.0 + 1e-12) + 1e-12;
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double rho = start + (outer - start) * t * t;
    if (dom.dim() == 1) {
      for (double x : {-rho, rho})
        if (dom.contains({x, 0.0})) pts.push_back({x, 0.0});
    } else {
      const int m = 64;
      for (int k = 0; k < m; ++k) {
        const double th = 2.0 * kPi * k / m;
        const Point p{rho * std::cos(th), rho * std::sin(th)};
        if (dom.contains(p)) pts.push_back(p);
      }
    }
  }
  return pts;
}

}  // namespace detail

/// Sampled sup of c over tail(r) & B_{8r}.
inline double tail_c_sup(const OperatorSpec& op, const DomainSpec& dom, double r,
                         int samples = 4096) {
  double s = -kInf;
  for (const Point& p : detail::tail_samples(dom, r, 8.0 * r, samples)) s = std::max(s, op.c(p));
  return s;
}

/// tail_c_sup at several radii over a common outer bound, so the sequence is
/// nonincreasing by construction.
inline std::vector<double> tail_c_sup_sequence(const OperatorSpec& op, const DomainSpec& dom,
                                               const std::vector<double>& radii,
                                               int samples = 4096) {
  detail::check_schedule(radii, 1);
  const double outer = 8.0 * radii.back();
  std::vector<double> out(radii.size(), -kInf);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double upper = i + 1 < radii.size() ? radii[i + 1] : outer;
    double s = -kInf;
    for (const Point& p : detail::tail_samples(dom, radii[i], upper, samples)) {
      const double rho = dom.dim() == 1 ? std::fabs(p.x) : std::hypot(p.x, p.y);
      if (rho <= upper * (1.0 + 1e-12)) s = std::max(s, op.c(p));
    }
    out[i] = s;
  }
  for (std::size_t i = radii.size() - 1; i-- > 0;) out[i] = std::max(out[i], out[i + 1]);
  return out;
}

struct IntervalEstimate {
  double lo = -kInf;
  double hi = kInf;
  std::string lo_source;
  std::string hi_source;
  bool heuristic = true;

  double width() const { return hi - lo; }
};

struct DoublePrimeReport {
  IntervalEstimate interval;
  double r = 0.0;
  double tail_c = -kInf;       // sampled sup of c beyond r
  double tail_lambda = kInf;   // lambda_1 of the exterior set at r
  std::optional<double> periodic;
};

struct TailOptions {
  double r = 0.0;                 // exterior radius; 0 picks half the largest truncation
  std::vector<double> R_schedule;  // outer radii for the tail exhaustion
  ExhaustOptions exhaust;
};

/// Bracket for lambda_1'' from the exterior characterization: the tail
/// quantity lies between -sup of c and lambda_1 on the exterior set.
inline DoublePrimeReport lambda_doubleprime_interval(const OperatorSpec& op, const DomainSpec& dom,
                                                     double lambda1_est,
                                                     const TailOptions& topt = {}) {
  DoublePrimeReport rep;
  IntervalEstimate& iv = rep.interval;
  if (dom.bounded()) {
    iv.lo = iv.hi = lambda1_est;
    iv.lo_source = iv.hi_source = "bounded-domain collapse: lambda1'' = lambda1";
    iv.heuristic = false;
    return rep;
  }
  if (op.period && dom.dim() == 1 && dom.geometry == Geometry::full_line) {
    const double lp = periodic_eig(op, *op.period).lambda;
    rep.periodic = lp;
    iv.lo = iv.hi = lp;
    iv.lo_source = iv.hi_source = "periodic collapse: lambda1'' = lambda_p";
    return rep;
  }
  rep.r = topt.r > 0.0 ? topt.r : 16.0;
  rep.tail_c = tail_c_sup(op, dom, rep.r);
  if (std::isfinite(lambda1_est)) {
    rep.tail_lambda = tail_lambda1(op, dom, rep.r, topt.R_schedule, topt.exhaust).value;
  } else {
    rep.tail_lambda = -kInf;
  }
  const double lower = -rep.tail_c;
  iv.lo = std::min(lambda1_est, lower);
  iv.lo_source = lambda1_est <= lower ? "lambda1 estimate (min with tail bound)"
                                      : "sup-c lower bound on exterior at r=" + expr::format_number(rep.r);
  iv.hi = std::min(lambda1_est, rep.tail_lambda);
  iv.hi_source = lambda1_est <= rep.tail_lambda
                     ? "lambda1 estimate (exterior characterization)"
                     : "exterior lambda1 at r=" + expr::format_number(rep.r);
  if (iv.lo > iv.hi) {
    iv.lo = iv.hi;
    iv.lo_source += " (clamped to upper end)";
  }
  return rep;
}

enum class SCCase { case1, case2, case3, inconclusive };

inline const char* to_string(SCCase c) {
  switch (c) {
    case SCCase::case1: return "Case1";
    case SCCase::case2: return "Case2";
    case SCCase::case3: return "Case3";
    case SCCase::inconclusive: return "Inconclusive";
  }
  return "?";
}

struct ClassifierResult {
  SCCase verdict = SCCase::inconclusive;
  double limsup_c = kInf;
  std::vector<std::string> trace;
};

struct ClassifierOptions {
  double r = 16.0;                          // radius where the tail is sampled
  std::vector<double> plateau_radii{1, 2, 4, 8};
  double tol = 1e-3;
  std::optional<ScalarField> gamma;         // user decomposition L = L~ + gamma
  std::optional<double> lambda1_tilde;      // lambda_1 of L~, if known
  std::optional<double> lambda1pp_tilde;    // lambda_1'' of L~, if known
};

/// Sufficient conditions for lambda_1 = lambda_1''; the decision trace lists
/// every inequality evaluated.
inline ClassifierResult sc_classifier(const OperatorSpec& op, const DomainSpec& dom,
                                      double lambda1_est, const ClassifierOptions& opt = {}) {
  ClassifierResult out;
  auto note = [&](std::string s) { out.trace.push_back(std::move(s)); };
  if (dom.bounded()) {
    note("bounded domain: classifier not applicable");
    return out;
  }
  // Case 1: user-supplied decomposition.
  if (opt.gamma) {
    const ScalarField& g = *opt.gamma;
    double gmin = kInf;
    for (const Point& p : detail::sample_domain(dom.truncation(8.0 * opt.r), 4096))
      gmin = std::min(gmin, g(p));
    double gtail = -kInf;
    for (const Point& p : detail::tail_samples(dom, opt.r, 8.0 * opt.r, 2048))
      gtail = std::max(gtail, std::fabs(g(p)));
    note("case1: min gamma = " + expr::format_number(gmin) + ", sup |gamma| beyond r = " +
         expr::format_number(gtail));
    const bool base_ok = opt.lambda1_tilde && opt.lambda1pp_tilde &&
                         std::fabs(*opt.lambda1_tilde - *opt.lambda1pp_tilde) <= opt.tol;
    if (gmin >= 0.0 && gtail <= opt.tol && base_ok) {
      note("case1: decomposition accepted");
      out.verdict = SCCase::case1;
      return out;
    }
    note("case1: decomposition rejected");
  }
  // Case 2.
  out.limsup_c = tail_c_sup(op, dom, opt.r);
  note("case2: lambda1 = " + expr::format_number(lambda1_est) + " vs -limsup c = " +
       expr::format_number(-out.limsup_c) + " (sampled beyond r=" + expr::format_number(opt.r) + ")");
  if (lambda1_est <= -out.limsup_c + opt.tol) {
    note("case2: inequality holds");
    out.verdict = SCCase::case2;
    return out;
  }
  note("case2: inequality fails");
  // Case 3.
  bool structural = op.self_adjoint();
  if (!structural) {
    double btail = 0.0;
    for (const Point& p : detail::tail_samples(dom, opt.r, 8.0 * opt.r, 1024))
      for (int i = 0; i < op.dim; ++i) btail = std::max(btail, std::fabs(op.b_at(i, p)));
    structural = btail <= opt.tol;
    note("case3: sup |b| beyond r = " + expr::format_number(btail));
  }
  const GrowthReport gr = growth_check(op, dom, {opt.r, 2 * opt.r, 4 * opt.r, 8 * opt.r});
  const EllipticityRange er = ellipticity_range(op, dom, 4096, 8.0 * opt.r);
  if (!structural || !gr.a_bounded || er.nonuniform) {
    note("case3: structural hypotheses fail (self-adjoint or vanishing drift, bounded a, "
         "uniform ellipticity)");
    return out;
  }
  const double beta = out.limsup_c - 0.05 * std::max(1.0, std::fabs(out.limsup_c));
  const double reach = 8.0 * opt.r;
  for (double rad : opt.plateau_radii) {
    bool found = false;
    const int centers = 512;
    for (int k = 0; k <= centers && !found; ++k) {
      const double x0 = opt.r + rad + (reach - opt.r - rad) * k / centers;
      for (double sgn : {1.0, -1.0}) {
        Point c0{sgn * x0, 0.0};
        if (!dom.contains(c0)) continue;
        double inf_c = kInf;
        bool inside = true;
        for (int j = 0; j <= 64 && inside; ++j) {
          const double off = -rad + 2.0 * rad * j / 64.0;
          const Point p{c0.x + off, 0.0};
          if (!dom.contains(p)) inside = false;
          else inf_c = std::min(inf_c, op.c(p));
        }
        if (inside && inf_c > beta) {
          found = true;
          break;
        }
      }
    }
    note("case3: plateau radius " + expr::format_number(rad) + (found ? " found" : " not found") +
         " (beta = " + expr::format_number(beta) + ")");
    if (!found) return out;
  }
  out.verdict = SCCase::case3;
  return out;
}

struct DecayRates {
  double gamma_minus = -kInf;
  double gamma_plus = kInf;
  std::vector<double> radii;
  std::vector<double> minus_at;  // sup over the shell
  std::vector<double> plus_at;   // inf over the shell
  bool heuristic = true;
};

/// Shell-sampled limsup/liminf of (B -/+ sqrt(B^2 - 4 A c)) / (2A), with c
/// replaced by c + lambda.
inline DecayRates decay_rates(const OperatorSpec& op, const DomainSpec& dom,
                              const std::vector<double>& radii, double lambda = 0.0) {
  detail::check_schedule(radii, 1);
  if (tail_c_sup(op, dom, radii.front()) + lambda >= 0.0)
    throw PreconditionFailed("decay rates need c + lambda < 0 in the tail");
  DecayRates out;
  for (double rho : radii) {
    std::vector<Point> pts;
    if (dom.dim() == 1) {
      for (double x : {-rho, rho})
        if (dom.contains({x, 0.0})) pts.push_back({x, 0.0});
    } else {
      for (int k = 0; k < 128; ++k) {
        const Point p{rho * std::cos(2 * kPi * k / 128), rho * std::sin(2 * kPi * k / 128)};
        if (dom.contains(p)) pts.push_back(p);
      }
    }
    double mx = -kInf, mn = kInf;
    for (const Point& p : pts) {
      double A = 0.0, tr = 0.0, bx = 0.0;
      const double xs[2] = {p.x, p.y};
      for (int i = 0; i < op.dim; ++i) {
        const double a = op.a_at(i, p);
        A += a * xs[i] * xs[i] / (rho * rho);
        tr += a;
        bx += op.b_at(i, p) * xs[i] / rho;
      }
      const double B = bx + tr / rho - A / rho;
      const double c = op.c(p) + lambda;
      const double disc = std::sqrt(B * B - 4.0 * A * c);
      mx = std::max(mx, (B - disc) / (2.0 * A));
      mn = std::min(mn, (B + disc) / (2.0 * A));
    }
    out.radii.push_back(rho);
    out.minus_at.push_back(mx);
    out.plus_at.push_back(mn);
  }
  out.gamma_minus = out.minus_at.back();
  out.gamma_plus = out.plus_at.back();
  return out;
}

/// Least-squares exponential decay rate of a positive grid function over
/// r1 <= |x| <= r2.
inline double measure_decay(const Vector& phi, const Grid& g, double r1, double r2) {
  if (static_cast<std::size_t>(phi.size()) != g.size()) throw SizeMismatch("phi does not match grid");
  std::vector<double> s, y;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point& p = g.points[k];
    const double rho = g.dim == 1 ? std::fabs(p.x) : std::hypot(p.x, p.y);
    if (rho >= r1 && rho <= r2) {
      const double v = phi[static_cast<Eigen::Index>(k)];
      if (!(v > 0.0)) throw PreconditionFailed("phi must be positive in the window");
      s.push_back(rho);
      y.push_back(std::log(v));
    }
  }
  if (s.size() < 10) throw WindowTooSmall(std::to_string(s.size()) + " nodes in the window");
  const double eta = -detail::fit_affine(s, y).slope;
  return eta == 0.0 ? 0.0 : eta;
}

enum class Simplicity { simple, unknown };

inline const char* to_string(Simplicity s) { return s == Simplicity::simple ? "Simple" : "Unknown"; }

struct SimplicityReport {
  Simplicity verdict = Simplicity::unknown;
  double lambda1 = 0.0;
  double tail_lambda = kInf;
  double eigen_gap = std::numeric_limits<double>::quiet_NaN();
  std::string route;
};

/// Simple when lambda_1 sits strictly below the exterior lambda_1; the
/// discrete gap on the largest truncation is reported as corroboration.
inline SimplicityReport simplicity_check(const DomainSpec& dom, double lambda1_est,
                                         double tail_lambda, double tol = 1e-3,
                                         const DiscreteOperator* largest = nullptr) {
  SimplicityReport rep;
  rep.lambda1 = lambda1_est;
  rep.tail_lambda = tail_lambda;
  if (largest && largest->size() > 1 && detail::is_tridiagonal(largest->A)) {
    try {
      rep.eigen_gap = tridiagonal_eigenvalue(*largest, 1) - tridiagonal_eigenvalue(*largest, 0);
    } catch (const Error&) {
    }
  }
  if (dom.bounded()) {
    rep.verdict = Simplicity::simple;
    rep.route = "bounded domain: principal eigenvalue is simple";
    return rep;
  }
  if (lambda1_est + tol < tail_lambda) {
    rep.verdict = Simplicity::simple;
    rep.route = "lambda1 below exterior lambda1";
  } else {
    rep.route = "no gap to the exterior lambda1";
  }
  return rep;
}

}  // namespace eigenlab

#endif  // EIGENLAB_UNBOUNDED_HPP
