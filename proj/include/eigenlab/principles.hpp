#ifndef EIGENLAB_PRINCIPLES_HPP
#define EIGENLAB_PRINCIPLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eigenlab/check.hpp"
#include "eigenlab/discretize.hpp"
#include "eigenlab/error.hpp"
#include "eigenlab/opspec.hpp"
#include "eigenlab/perron.hpp"
#include "eigenlab/unbounded.hpp"

namespace eigenlab {

/// Discrete maximum principle on a bounded grid: the principal eigenvalue
/// of -A is positive.
inline bool discrete_mp_holds(const DiscreteOperator& D, double tol = 1e-12) {
  return principal_eig(D, tol).lambda > 0.0;
}

// ---------------------------------------------------------------------------
// Pointwise evaluation of L on expression fields.

namespace detail {

struct PointwiseL {
  double value = 0.0;  // L phi at the point (lambda excluded)
  double phi = 0.0;
  double scale = 0.0;  // sum of magnitudes of the individual terms
  double noise = 0.0;  // rounding floor of the difference quotients
};

// Fourth-order central differences with a step relative to |x|.
inline PointwiseL apply_pointwise(const OperatorSpec& op, const ScalarField& phi, const Point& p) {
  PointwiseL out;
  out.phi = phi(p);
  const double c = op.c(p);
  out.value = c * out.phi;
  out.scale = std::fabs(out.value);
  const double xs[2] = {p.x, p.y};
  for (int i = 0; i < op.dim; ++i) {
    const double d = 1e-3 * std::max(1.0, std::fabs(xs[i]));
    auto shift = [&](double t) { return i == 0 ? Point{p.x + t, p.y} : Point{p.x, p.y + t}; };
    auto f = [&](const ScalarField& g, double t) { return g(shift(t)); };
    const double f2 = f(phi, 2 * d), f1 = f(phi, d), fm1 = f(phi, -d), fm2 = f(phi, -2 * d);
    const double d1 = (-f2 + 8.0 * f1 - 8.0 * fm1 + fm2) / (12.0 * d);
    const double d2 = (-f2 + 16.0 * f1 - 30.0 * out.phi + 16.0 * fm1 - fm2) / (12.0 * d * d);
    const double a = op.a_at(i, p);
    double first = 0.0;
    if (op.form == Form::divergence) {
      const ScalarField& ai = op.a[static_cast<std::size_t>(i)];
      const double da = (-f(ai, 2 * d) + 8.0 * f(ai, d) - 8.0 * f(ai, -d) + f(ai, -2 * d)) / (12.0 * d);
      first = da * d1;
    } else {
      first = op.b_at(i, p) * d1;
    }
    out.value += a * d2 + first;
    out.scale += std::fabs(a * d2) + std::fabs(first);
    const double fmax = std::max({std::fabs(f2), std::fabs(f1), std::fabs(fm1), std::fabs(fm2)});
    const double bmag = op.form == Form::divergence ? std::fabs(first / (d1 == 0.0 ? 1.0 : d1))
                                                    : std::fabs(op.b_at(i, p));
    out.noise += 64.0 * std::numeric_limits<double>::epsilon() * fmax * (std::fabs(a) / (d * d) + bmag / d);
  }
  return out;
}

inline bool in_kink_band(const OperatorSpec& op, const Point& p, double band,
                         const std::vector<double>& extra) {
  auto near = [band](double v, const std::vector<double>& bps) {
    for (double b : bps)
      if (std::fabs(v - b) < band) return true;
    return false;
  };
  if (near(p.x, op.breakpoints) || near(p.x, extra)) return true;
  return op.dim == 2 && near(p.y, op.breakpoints_y);
}

// Interior sample nodes of dom & B_R with spacing h whose stencils stay inside.
inline std::vector<Point> certificate_nodes(const DomainSpec& dom, double R, double h) {
  const DomainSpec region = dom.truncation(R);
  std::vector<Point> pts;
  auto stencil_inside = [&](const Point& p) {
    const double d = 2.5e-3 * std::max(1.0, std::max(std::fabs(p.x), std::fabs(p.y)));
    if (!region.contains(p)) return false;
    for (double s : {-d, d}) {
      if (!region.contains({p.x + s, p.y})) return false;
      if (dom.dim() == 2 && !region.contains({p.x, p.y + s})) return false;
    }
    return true;
  };
  if (dom.dim() == 1) {
    for (const Interval& iv : region.intervals()) {
      const long n = static_cast<long>(std::floor(iv.length() / h));
      for (long k = 1; k <= n; ++k) {
        const Point p{iv.lo + h * static_cast<double>(k), 0.0};
        if (stencil_inside(p)) pts.push_back(p);
      }
    }
  } else {
    const Box bb = region.bounding_box();
    for (double y = bb.y0 + h; y < bb.y1; y += h)
      for (double x = bb.x0 + h; x < bb.x1; x += h)
        if (stencil_inside({x, y})) pts.push_back({x, y});
  }
  return pts;
}

struct BoundaryProbe {
  Point at;
  Point inward;  // unit inward normal
};

// Points of the true boundary of dom (the artificial truncation boundary is
// excluded) within B_R.
inline std::vector<BoundaryProbe> boundary_probes(const DomainSpec& dom, double R) {
  std::vector<BoundaryProbe> out;
  const auto& p = dom.params;
  auto keep = [&](const Point& q) { return std::hypot(q.x, q.y) <= R; };
  switch (dom.geometry) {
    case Geometry::interval:
      out.push_back({{p[0], 0.0}, {1.0, 0.0}});
      out.push_back({{p[1], 0.0}, {-1.0, 0.0}});
      break;
    case Geometry::half_line:
      out.push_back({{p[0], 0.0}, {1.0, 0.0}});
      break;
    case Geometry::rectangle:
      for (int k = 1; k < 16; ++k) {
        const double tx = p[0] + (p[1] - p[0]) * k / 16.0, ty = p[2] + (p[3] - p[2]) * k / 16.0;
        out.push_back({{tx, p[2]}, {0.0, 1.0}});
        out.push_back({{tx, p[3]}, {0.0, -1.0}});
        out.push_back({{p[0], ty}, {1.0, 0.0}});
        out.push_back({{p[1], ty}, {-1.0, 0.0}});
      }
      break;
    case Geometry::disk:
    case Geometry::annulus:
      for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * kPi * k / 64.0, cs = std::cos(th), sn = std::sin(th);
        const double outer = dom.geometry == Geometry::disk ? p[2] : p[3];
        out.push_back({{p[0] + outer * cs, p[1] + outer * sn}, {-cs, -sn}});
        if (dom.geometry == Geometry::annulus && p[2] > 0.0)
          out.push_back({{p[0] + p[2] * cs, p[1] + p[2] * sn}, {cs, sn}});
      }
      break;
    default:
      break;
  }
  std::vector<BoundaryProbe> kept;
  for (const auto& b : out)
    if (keep(b.at)) kept.push_back(b);
  return kept;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Barrier certificates.

enum class CertificateKind { sub, super };

inline const char* to_string(CertificateKind k) { return k == CertificateKind::sub ? "sub" : "super"; }

struct CertificateCandidate {
  CertificateKind kind = CertificateKind::super;
  ScalarField beta = ScalarField::constant(1.0);
  ScalarField phi = ScalarField::constant(1.0);
  double lambda = 0.0;
  double beta_scale = 1.0;  // compare phi against beta_scale * beta
};

struct CertifyOptions {
  double h = 0.01;          // node spacing
  double radius = 16.0;     // truncation radius for unbounded domains
  double rel_tol = 1e-6;    // relative to the magnitude of the terms of L phi
  std::vector<double> kinks;  // kinks of phi beyond the operator breakpoints
};

struct BarrierCertificate {
  CertificateKind kind = CertificateKind::super;
  ScalarField beta;
  ScalarField phi;
  double lambda = 0.0;
  double beta_scale = 1.0;
  double residual_margin = kInf;  // min slack of the differential inequality
  double barrier_margin = kInf;   // min slack of the comparison with beta
  double kink_band = 0.0;
  std::size_t nodes = 0;
};

/// Checks the defining inequalities of a barrier certificate at every node:
/// super: phi >= k beta, (L + lambda) phi <= 0;
/// sub: 0 < phi <= k beta, (L + lambda) phi >= 0, phi -> 0 at the boundary.
inline BarrierCertificate certify_barrier(const OperatorSpec& op, const DomainSpec& dom,
                                          const CertificateCandidate& cand,
                                          const CertifyOptions& opt = {}) {
  BarrierCertificate cert;
  cert.kind = cand.kind;
  cert.beta = cand.beta;
  cert.phi = cand.phi;
  cert.lambda = cand.lambda;
  cert.beta_scale = cand.beta_scale;
  cert.kink_band = 2.0 * opt.h;
  const bool super = cand.kind == CertificateKind::super;
  for (const Point& p : detail::certificate_nodes(dom, opt.radius, opt.h)) {
    if (detail::in_kink_band(op, p, cert.kink_band, opt.kinks)) continue;
    ++cert.nodes;
    const detail::PointwiseL lp = detail::apply_pointwise(op, cand.phi, p);
    const double val = lp.value + cand.lambda * lp.phi;
    const double tol = opt.rel_tol * (lp.scale + std::fabs(cand.lambda * lp.phi)) + lp.noise + 1e-300;
    const double bound = cand.beta_scale * cand.beta(p);
    if (super) {
      if (val > tol) throw CertificateRejected(p.x, "(L+lambda)phi <= 0");
      if (lp.phi < bound * (1.0 - 1e-12)) throw CertificateRejected(p.x, "phi >= beta");
      cert.residual_margin = std::min(cert.residual_margin, -val / (lp.scale + 1e-300));
      cert.barrier_margin = std::min(cert.barrier_margin, lp.phi - bound);
    } else {
      if (!(lp.phi > 0.0)) throw CertificateRejected(p.x, "phi > 0");
      if (val < -tol) throw CertificateRejected(p.x, "(L+lambda)phi >= 0");
      if (lp.phi > bound * (1.0 + 1e-12)) throw CertificateRejected(p.x, "phi <= beta");
      cert.residual_margin = std::min(cert.residual_margin, val / (lp.scale + 1e-300));
      cert.barrier_margin = std::min(cert.barrier_margin, bound - lp.phi);
    }
  }
  if (cert.nodes == 0) throw PreconditionFailed("no certificate nodes outside the kink band");
  if (!super) {
    for (const auto& b : detail::boundary_probes(dom, opt.radius)) {
      double v[3];
      const double ds[3] = {opt.h, opt.h / 2, opt.h / 4};
      for (int k = 0; k < 3; ++k)
        v[k] = cand.phi(Point{b.at.x + ds[k] * b.inward.x, b.at.y + ds[k] * b.inward.y});
      const bool vanished = std::max({v[0], v[1], v[2]}) <= 1e-12;
      const bool decreasing = v[1] <= 0.75 * v[0] && v[2] <= 0.75 * v[1];
      if (!vanished && !decreasing) throw CertificateRejected(b.at.x, "phi -> 0 on the boundary");
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Maximum-principle witnesses.

enum class WitnessKind { plain, decay };

inline const char* to_string(WitnessKind k) { return k == WitnessKind::plain ? "plain" : "decay"; }

struct WitnessReport {
  WitnessKind kind = WitnessKind::plain;
  ScalarField u;
  bool accepted = false;
  double max_u = -kInf;
  Point argmax{};
  double min_Lu_rel = kInf;  // min of Lu relative to its term magnitude
  double boundary_max = -kInf;
  double inner_sup = -kInf;  // sup over |x| <= R/2
  double outer_sup = -kInf;  // sup over R/2 < |x| <= R
  double edge_abs = 0.0;     // max |u| over 0.9 R <= |x| <= R
  double kink_band = 0.0;
  std::size_t nodes = 0;
  bool heuristic = true;
};

/// Checks Lu >= 0, sup u < inf (or decay), u <= 0 on the boundary and
/// max u > 0 on sampled nodes; a success means u violates the MP.
inline WitnessReport check_mp_witness(const OperatorSpec& op, const DomainSpec& dom,
                                      const ScalarField& u, WitnessKind kind = WitnessKind::plain,
                                      const CertifyOptions& opt = {}) {
  WitnessReport rep;
  rep.kind = kind;
  rep.u = u;
  rep.kink_band = 2.0 * opt.h;
  const double R = dom.bounded() ? dom.circumradius() : opt.radius;
  for (const Point& p : detail::certificate_nodes(dom, opt.radius, opt.h)) {
    const double val = u(p);
    if (val > rep.max_u) {
      rep.max_u = val;
      rep.argmax = p;
    }
    const double rho = dom.dim() == 1 ? std::fabs(p.x) : std::hypot(p.x, p.y);
    double& half = rho <= 0.5 * R ? rep.inner_sup : rep.outer_sup;
    half = std::max(half, val);
    if (rho >= 0.9 * R) rep.edge_abs = std::max(rep.edge_abs, std::fabs(val));
    if (detail::in_kink_band(op, p, rep.kink_band, opt.kinks)) continue;
    ++rep.nodes;
    const detail::PointwiseL lp = detail::apply_pointwise(op, u, p);
    const double rel = lp.value / (lp.scale + 1e-300);
    rep.min_Lu_rel = std::min(rep.min_Lu_rel, rel);
    if (lp.value < -opt.rel_tol * lp.scale - lp.noise)
      throw NotAWitness("Lu < 0 near x=" + expr::format_number(p.x));
  }
  for (const auto& b : detail::boundary_probes(dom, opt.radius)) {
    const double v = u(Point{b.at.x + 0.25 * opt.h * b.inward.x, b.at.y + 0.25 * opt.h * b.inward.y});
    const double at = u(b.at);
    rep.boundary_max = std::max(rep.boundary_max, std::min(v, at));
  }
  if (rep.boundary_max > opt.rel_tol * std::max(1.0, std::fabs(rep.max_u)))
    throw NotAWitness("u is positive on the boundary");
  if (!(rep.max_u > opt.rel_tol)) throw NotAWitness("u is never positive");
  if (!dom.bounded()) {
    if (kind == WitnessKind::plain) {
      if (rep.outer_sup > std::max(1.0, 2.0 * rep.inner_sup))
        throw NotAWitness("u appears unbounded above");
    } else {
      if (rep.edge_abs > 1e-3 * rep.max_u) throw NotAWitness("u does not decay");
    }
  }
  rep.accepted = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Combined analysis: lambda_1 estimate, lambda_1'' and lambda_1' brackets.

struct AnalysisOptions {
  std::vector<double> schedule{2, 4, 8, 16, 32, 64};  // truncation radii (unbounded)
  double h = 0.005;                                    // bounded-domain spacing
  double tol = 1e-3;                                   // chain tolerance and verdict margin
  ExhaustOptions exhaust;
  TailOptions tail;
  ClassifierOptions classifier;
  std::vector<CertificateCandidate> certificates;  // sub: lambda_1' upper bounds
  CertifyOptions certify;
  std::optional<ScalarField> witness;
  WitnessKind witness_kind = WitnessKind::plain;
};

struct Analysis {
  GrowthReport growth;
  double lambda1 = 0.0;
  std::string lambda1_source;
  std::optional<ExhaustionReport> exhaustion;
  double sup_c = -kInf;
  DoublePrimeReport doubleprime;
  IntervalEstimate lambda1p;
  ClassifierResult classifier;
  std::vector<BarrierCertificate> certificates;
  std::vector<std::string> rejected;
  std::optional<WitnessReport> witness;
  std::string witness_failure;
  bool self_adjoint_bounded_a = false;
  double tol = 1e-3;
};

inline Analysis analyze(const OperatorSpec& op, const DomainSpec& dom,
                        const AnalysisOptions& opt = {}) {
  Analysis an;
  an.tol = opt.tol;
  const double reach = dom.bounded() ? dom.circumradius() : opt.schedule.back();
  std::vector<double> growth_radii;
  for (double r : opt.schedule) growth_radii.push_back(r);
  if (dom.bounded()) growth_radii = {reach};
  an.growth = growth_check(op, dom, growth_radii);
  an.self_adjoint_bounded_a = op.self_adjoint() && an.growth.a_bounded;

  if (dom.bounded()) {
    an.lambda1 = solve_bounded(op, dom, opt.h, opt.exhaust.tol, opt.exhaust.max_iter, opt.exhaust.scheme)
                     .extrapolated;
    an.lambda1_source = "Dirichlet solve, Richardson over {h, h/2}";
  } else {
    an.exhaustion = exhaust_lambda1(op, dom, opt.schedule, opt.exhaust);
    an.lambda1 = an.exhaustion->extrapolated;
    an.lambda1_source = std::string("exhaustion limit (") + to_string(an.exhaustion->model) + " model)";
  }

  double sampled = -kInf;
  for (const Point& p : detail::sample_domain(dom.truncation(8.0 * reach), 8192))
    sampled = std::max(sampled, op.c(p));
  an.sup_c = an.growth.sup_c_bounded ? sampled : kInf;

  TailOptions topt = opt.tail;
  if (topt.r <= 0.0) topt.r = std::max(1.0, reach / 4.0);
  topt.exhaust = opt.exhaust;
  an.doubleprime = lambda_doubleprime_interval(op, dom, an.lambda1, topt);
  if (std::isfinite(an.doubleprime.tail_c)) an.sup_c = std::max(an.sup_c, an.doubleprime.tail_c);

  ClassifierOptions copt = opt.classifier;
  copt.r = topt.r;
  if (!dom.bounded() && std::isfinite(an.lambda1)) {
    an.classifier = sc_classifier(op, dom, an.lambda1, copt);
    IntervalEstimate& iv = an.doubleprime.interval;
    if (an.classifier.verdict != SCCase::inconclusive && iv.lo < iv.hi) {
      iv.lo = iv.hi;
      iv.lo_source = std::string("equality lambda1'' = lambda1 (") + to_string(an.classifier.verdict) + ")";
    }
  }

  IntervalEstimate& p = an.lambda1p;
  if (an.growth.abc3_ok) {
    p.lo = an.doubleprime.interval.lo;
    p.lo_source = "lambda1'' <= lambda1' under ABC3";
  } else {
    p.lo = -kInf;
    p.lo_source = "no lower bound (ABC3 gate not passed)";
  }
  p.hi = an.lambda1;
  p.hi_source = "lambda1' <= lambda1";
  for (const CertificateCandidate& cand : opt.certificates) {
    if (cand.kind != CertificateKind::sub) continue;
    try {
      BarrierCertificate cert = certify_barrier(op, dom, cand, opt.certify);
      if (cand.lambda < p.hi) {
        p.hi = cand.lambda;
        p.hi_source = "sub-certificate phi=" + cand.phi.to_string() + " at lambda=" +
                      expr::format_number(cand.lambda);
      }
      an.certificates.push_back(std::move(cert));
    } catch (const CertificateRejected& e) {
      an.rejected.push_back(e.what());
    }
  }
  if (an.doubleprime.periodic) {
    p.lo = p.hi = *an.doubleprime.periodic;
    p.lo_source = p.hi_source = "periodic collapse: lambda1' = lambda_p";
  } else if (an.self_adjoint_bounded_a && std::isfinite(an.lambda1)) {
    p.lo = p.hi = an.lambda1;
    p.lo_source = p.hi_source = "self-adjoint with bounded a: lambda1' = lambda1";
  }
  if (p.lo > p.hi) p.lo = p.hi;

  if (opt.witness) {
    try {
      an.witness = check_mp_witness(op, dom, *opt.witness, opt.witness_kind, opt.certify);
    } catch (const NotAWitness& e) {
      an.witness_failure = e.what();
    }
  }
  return an;
}

// ---------------------------------------------------------------------------
// Relations chain.

struct RelationRow {
  std::string quantity;
  double lo = 0.0;
  double hi = 0.0;
  std::string source;
};

struct RelationsReport {
  std::vector<RelationRow> rows;
  std::vector<Check> checks;  // each asserted inequality, in order
  double tol = 1e-3;
  bool ok() const { return all_ok(checks); }
};

/// Evaluates the whole chain without throwing.
inline RelationsReport relations_evaluate(const Analysis& an) {
  RelationsReport rep;
  rep.tol = an.tol;
  const double tol = an.tol;
  const IntervalEstimate& dp = an.doubleprime.interval;
  const IntervalEstimate& p = an.lambda1p;
  rep.rows.push_back({"-sup c", -an.sup_c, -an.sup_c, "sampled sup of c"});
  rep.rows.push_back({"lambda1''", dp.lo, dp.hi, dp.lo_source + " | " + dp.hi_source});
  rep.rows.push_back({"lambda1'", p.lo, p.hi, p.lo_source + " | " + p.hi_source});
  rep.rows.push_back({"lambda1", an.lambda1, an.lambda1, an.lambda1_source});
  auto check = [&](bool ok, const std::string& what, double value, double bound, const char* why) {
    rep.checks.push_back({what, ok, value, bound, why});
  };
  check(-an.sup_c - tol <= dp.lo, "-sup c - tol <= lambda1'' lo", dp.lo, -an.sup_c - tol,
        "lambda1'' >= -sup c (constant test function)");
  check(dp.lo <= dp.hi, "lambda1'' lo <= lambda1'' hi", dp.lo, dp.hi, "bracket consistency");
  check(dp.hi <= an.lambda1 + tol, "lambda1'' hi <= lambda1 + tol", dp.hi, an.lambda1 + tol,
        "lambda1'' <= lambda1 (exterior characterization)");
  if (an.growth.abc3_ok)
    check(p.lo >= dp.lo - tol, "lambda1' lo >= lambda1'' lo - tol (ABC3)", p.lo, dp.lo - tol,
          "lambda1'' <= lambda1' under the growth conditions");
  check(p.hi <= an.lambda1 + tol, "lambda1' hi <= lambda1 + tol", p.hi, an.lambda1 + tol,
        "lambda1' <= lambda1 (general comparison)");
  check(p.lo <= p.hi + tol, "lambda1' lo <= lambda1' hi", p.lo, p.hi + tol, "bracket consistency");
  if (an.self_adjoint_bounded_a && std::isfinite(an.lambda1))
    check(std::fabs(p.lo - an.lambda1) <= tol && std::fabs(p.hi - an.lambda1) <= tol,
          "lambda1' = lambda1 (self-adjoint, bounded a)", std::max(std::fabs(p.lo - an.lambda1), std::fabs(p.hi - an.lambda1)),
          tol, "lambda1' = lambda1 for self-adjoint operators with bounded a");
  return rep;
}

/// Same as relations_evaluate, but the first violated inequality throws.
inline RelationsReport relations_report(const Analysis& an) {
  RelationsReport rep = relations_evaluate(an);
  for (const Check& c : rep.checks)
    if (!c.ok) throw ChainViolation(c.name);
  return rep;
}

// ---------------------------------------------------------------------------
// MP verdict.

enum class Verdict { holds, fails, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "Holds";
    case Verdict::fails: return "Fails";
    case Verdict::unknown: return "Unknown";
  }
  return "?";
}

struct MPVerdict {
  Verdict verdict = Verdict::unknown;
  std::vector<std::string> basis;
  std::optional<WitnessReport> witness;
};

inline MPVerdict mp_verdict(const Analysis& an) {
  MPVerdict v;
  const double margin = an.tol;
  const IntervalEstimate& dp = an.doubleprime.interval;
  const bool holds = dp.lo > margin && an.growth.abc3_ok;
  const bool plain_witness = an.witness && an.witness->accepted && an.witness->kind == WitnessKind::plain;
  const bool fails = an.lambda1p.hi < -margin || plain_witness;
  v.basis.push_back("growth gate: " + std::string(to_string(an.growth.verdict)));
  v.basis.push_back("lambda1'' in [" + expr::format_number(dp.lo) + ", " + expr::format_number(dp.hi) + "]");
  v.basis.push_back("lambda1' in [" + expr::format_number(an.lambda1p.lo) + ", " +
                    expr::format_number(an.lambda1p.hi) + "]");
  if (holds && fails) throw InvariantViolation("MP verdict is both Holds and Fails");
  if (holds) {
    v.verdict = Verdict::holds;
    v.basis.push_back("lambda1'' > 0 and ABC3: the MP holds");
  } else if (fails) {
    v.verdict = Verdict::fails;
    if (an.lambda1p.hi < -margin) v.basis.push_back("lambda1' < 0: the MP cannot hold");
    if (plain_witness) v.basis.push_back("accepted witness violates the MP");
  } else {
    v.basis.push_back("brackets straddle 0 and no witness: undecided");
  }
  if (an.witness) v.witness = an.witness;
  return v;
}

inline MPVerdict mp_verdict_unbounded(const OperatorSpec& op, const DomainSpec& dom,
                                      const AnalysisOptions& opt = {}) {
  return mp_verdict(analyze(op, dom, opt));
}

}  // namespace eigenlab

#endif  // EIGENLAB_PRINCIPLES_HPP
