#ifndef EIGENLAB_OPSPEC_HPP
#define EIGENLAB_OPSPEC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenlab/error.hpp"
#include "eigenlab/expr.hpp"

namespace eigenlab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

enum class Form { non_divergence, divergence };

inline const char* to_string(Form f) {
  return f == Form::divergence ? "divergence" : "non_divergence";
}

/// L u = a_ii d_ii u + b_i d_i u + c u (non-divergence) or
/// L u = d_i(a_ii d_i u) + c u (divergence). Diffusion is diagonal in 2D.
struct OperatorSpec {
  int dim = 1;
  std::vector<ScalarField> a{ScalarField::constant(1.0)};
  std::vector<ScalarField> b{ScalarField::constant(0.0)};
  ScalarField c = ScalarField::constant(0.0);
  Form form = Form::non_divergence;
  std::vector<double> breakpoints;    // x-coordinates of coefficient kinks
  std::vector<double> breakpoints_y;  // 2D only
  std::optional<double> period;       // all coefficients periodic with this period (1D)

  static OperatorSpec one_d(ScalarField a, ScalarField b, ScalarField c,
                            std::vector<double> breakpoints = {},
                            Form form = Form::non_divergence) {
    OperatorSpec op;
    op.dim = 1;
    op.a = {std::move(a)};
    op.b = {std::move(b)};
    op.c = std::move(c);
    op.form = form;
    op.breakpoints = std::move(breakpoints);
    op.validate();
    return op;
  }

  static OperatorSpec one_d(std::string_view a, std::string_view b, std::string_view c,
                            std::vector<double> breakpoints = {},
                            Form form = Form::non_divergence) {
    return one_d(parse_field(a, 1), parse_field(b, 1), parse_field(c, 1), std::move(breakpoints),
                 form);
  }

  static OperatorSpec two_d(std::string_view a11, std::string_view a22, std::string_view b1,
                            std::string_view b2, std::string_view c,
                            Form form = Form::non_divergence) {
    OperatorSpec op;
    op.dim = 2;
    op.a = {parse_field(a11, 2), parse_field(a22, 2)};
    op.b = {parse_field(b1, 2), parse_field(b2, 2)};
    op.c = parse_field(c, 2);
    op.form = form;
    op.validate();
    return op;
  }

  void validate() const {
    if (dim != 1 && dim != 2) throw PreconditionFailed("dimension must be 1 or 2");
    if (static_cast<int>(a.size()) != dim || static_cast<int>(b.size()) != dim)
      throw PreconditionFailed("coefficient count does not match dimension");
    if (form == Form::divergence)
      for (const auto& bi : b)
        if (!bi.is_zero()) throw PreconditionFailed("divergence form admits no drift term");
    if (period && !(*period > 0.0)) throw PreconditionFailed("period must be positive");
  }

  bool has_drift() const {
    return std::any_of(b.begin(), b.end(), [](const ScalarField& f) { return !f.is_zero(); });
  }

  /// Formally self-adjoint: divergence form, or constant diffusion without drift.
  bool self_adjoint() const {
    if (form == Form::divergence) return true;
    if (has_drift()) return false;
    return std::all_of(a.begin(), a.end(), [](const ScalarField& f) { return f.is_constant(); });
  }

  double a_at(int i, const Point& p) const { return a[static_cast<std::size_t>(i)](p); }
  double b_at(int i, const Point& p) const { return b[static_cast<std::size_t>(i)](p); }

  double alpha_min(const Point& p) const {
    double m = a_at(0, p);
    for (int i = 1; i < dim; ++i) m = std::min(m, a_at(i, p));
    return m;
  }
  double alpha_max(const Point& p) const {
    double m = a_at(0, p);
    for (int i = 1; i < dim; ++i) m = std::max(m, a_at(i, p));
    return m;
  }

  OperatorSpec with_c(ScalarField new_c) const {
    OperatorSpec op = *this;
    op.c = std::move(new_c);
    return op;
  }
  OperatorSpec scaled_c(double gamma) const { return with_c(c.scaled(gamma)); }
  OperatorSpec shifted_c(double delta) const { return with_c(c.plus(delta)); }
  OperatorSpec scaled_a(double alpha) const {
    OperatorSpec op = *this;
    for (auto& ai : op.a) ai = ai.scaled(alpha);
    return op;
  }
};

enum class Geometry { interval, half_line, full_line, rectangle, disk, annulus, full_plane };

inline const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::interval: return "interval";
    case Geometry::half_line: return "half_line";
    case Geometry::full_line: return "full_line";
    case Geometry::rectangle: return "rectangle";
    case Geometry::disk: return "disk";
    case Geometry::annulus: return "annulus";
    case Geometry::full_plane: return "full_plane";
  }
  return "?";
}

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  friend bool operator==(const Interval& p, const Interval& q) {
    return p.lo == q.lo && p.hi == q.hi;
  }
};

struct Box {
  double x0, x1, y0, y1;
};

/// Geometry parameters:
///   interval (l, r); half_line (l) meaning (l, +inf); full_line ();
///   rectangle (x0, x1, y0, y1); disk (cx, cy, R); annulus (cx, cy, r_in, r_out);
///   full_plane ().
/// The open set described is (base geometry) intersected with B_clip and
/// with the closed ball of radius `exclude` removed; both balls sit at the origin.
struct DomainSpec {
  Geometry geometry = Geometry::interval;
  std::vector<double> params{0.0, 1.0};
  double clip = kInf;
  double exclude = 0.0;

  static DomainSpec interval(double l, double r) { return make(Geometry::interval, {l, r}); }
  static DomainSpec half_line(double l) { return make(Geometry::half_line, {l}); }
  static DomainSpec full_line() { return make(Geometry::full_line, {}); }
  static DomainSpec rectangle(double x0, double x1, double y0, double y1) {
    return make(Geometry::rectangle, {x0, x1, y0, y1});
  }
  static DomainSpec disk(double cx, double cy, double radius) {
    return make(Geometry::disk, {cx, cy, radius});
  }
  static DomainSpec annulus(double cx, double cy, double r_in, double r_out) {
    return make(Geometry::annulus, {cx, cy, r_in, r_out});
  }
  static DomainSpec full_plane() { return make(Geometry::full_plane, {}); }

  static DomainSpec make(Geometry g, std::vector<double> p) {
    DomainSpec d;
    d.geometry = g;
    d.params = std::move(p);
    d.validate();
    return d;
  }

  void validate() const {
    static constexpr std::size_t kCount[] = {2, 1, 0, 4, 3, 4, 0};
    if (params.size() != kCount[static_cast<int>(geometry)])
      throw PreconditionFailed(std::string("wrong parameter count for ") + to_string(geometry));
    for (double v : params)
      if (!std::isfinite(v)) throw PreconditionFailed("domain parameters must be finite");
    switch (geometry) {
      case Geometry::interval:
        if (!(params[0] < params[1])) throw PreconditionFailed("interval needs l < r");
        break;
      case Geometry::rectangle:
        if (!(params[0] < params[1] && params[2] < params[3]))
          throw PreconditionFailed("rectangle needs x0 < x1 and y0 < y1");
        break;
      case Geometry::disk:
        if (!(params[2] > 0.0)) throw PreconditionFailed("disk radius must be positive");
        break;
      case Geometry::annulus:
        if (!(params[2] >= 0.0 && params[2] < params[3]))
          throw PreconditionFailed("annulus needs 0 <= r_in < r_out");
        break;
      default:
        break;
    }
  }

  int dim() const {
    return geometry == Geometry::interval || geometry == Geometry::half_line ||
                   geometry == Geometry::full_line
               ? 1
               : 2;
  }

  bool base_bounded() const {
    return geometry == Geometry::interval || geometry == Geometry::rectangle ||
           geometry == Geometry::disk || geometry == Geometry::annulus;
  }

  bool bounded() const { return base_bounded() || std::isfinite(clip); }

  /// Largest distance from the origin to a point of the closure.
  double circumradius() const {
    double r = kInf;
    switch (geometry) {
      case Geometry::interval:
        r = std::max(std::fabs(params[0]), std::fabs(params[1]));
        break;
      case Geometry::rectangle:
        r = std::hypot(std::max(std::fabs(params[0]), std::fabs(params[1])),
                       std::max(std::fabs(params[2]), std::fabs(params[3])));
        break;
      case Geometry::disk:
        r = std::hypot(params[0], params[1]) + params[2];
        break;
      case Geometry::annulus:
        r = std::hypot(params[0], params[1]) + params[3];
        break;
      default:
        break;
    }
    return std::min(r, clip);
  }

  bool base_contains(const Point& p) const {
    switch (geometry) {
      case Geometry::interval: return p.x > params[0] && p.x < params[1];
      case Geometry::half_line: return p.x > params[0];
      case Geometry::full_line: return true;
      case Geometry::rectangle:
        return p.x > params[0] && p.x < params[1] && p.y > params[2] && p.y < params[3];
      case Geometry::disk: return std::hypot(p.x - params[0], p.y - params[1]) < params[2];
      case Geometry::annulus: {
        const double d = std::hypot(p.x - params[0], p.y - params[1]);
        return d > params[2] && d < params[3];
      }
      case Geometry::full_plane: return true;
    }
    return false;
  }

  /// Strict membership in the open set.
  bool contains(const Point& p) const {
    const double r = dim() == 1 ? std::fabs(p.x) : std::hypot(p.x, p.y);
    return base_contains(p) && r < clip && (exclude <= 0.0 || r > exclude);
  }

  /// Omega intersected with B_r.
  DomainSpec truncation(double r) const {
    if (!(r > 0.0)) throw PreconditionFailed("truncation radius must be positive");
    DomainSpec d = *this;
    if (base_bounded() && r >= circumradius()) return d;
    d.clip = std::min(clip, r);
    return d;
  }

  /// Omega minus the closed ball of radius r.
  DomainSpec tail(double r) const {
    if (!(r >= 0.0)) throw PreconditionFailed("tail radius must be nonnegative");
    DomainSpec d = *this;
    d.exclude = std::max(exclude, r);
    return d;
  }

  /// Points at distance > eps from the boundary.
  DomainSpec interior_offset(double eps) const { return offset(-eps); }

  /// Outer approximation Omega + B_delta.
  DomainSpec inflate(double delta) const { return offset(delta); }

  /// 1D connected components, ordered left to right. Empty if the set is empty.
  std::vector<Interval> intervals() const {
    if (dim() != 1) throw PreconditionFailed("intervals() is defined for 1D domains");
    Interval base{-kInf, kInf};
    if (geometry == Geometry::interval) base = {params[0], params[1]};
    if (geometry == Geometry::half_line) base = {params[0], kInf};
    base.lo = std::max(base.lo, -clip);
    base.hi = std::min(base.hi, clip);
    std::vector<Interval> out;
    auto push = [&](double lo, double hi) {
      if (lo < hi) out.push_back({lo, hi});
    };
    if (exclude > 0.0) {
      push(base.lo, std::min(base.hi, -exclude));
      push(std::max(base.lo, exclude), base.hi);
    } else {
      push(base.lo, base.hi);
    }
    return out;
  }

  /// Bounding box of a bounded 2D domain.
  Box bounding_box() const {
    if (dim() != 2) throw PreconditionFailed("bounding_box() is defined for 2D domains");
    Box box{-kInf, kInf, -kInf, kInf};
    switch (geometry) {
      case Geometry::rectangle:
        box = {params[0], params[1], params[2], params[3]};
        break;
      case Geometry::disk:
        box = {params[0] - params[2], params[0] + params[2], params[1] - params[2],
               params[1] + params[2]};
        break;
      case Geometry::annulus:
        box = {params[0] - params[3], params[0] + params[3], params[1] - params[3],
               params[1] + params[3]};
        break;
      default:
        break;
    }
    box.x0 = std::max(box.x0, -clip);
    box.x1 = std::min(box.x1, clip);
    box.y0 = std::max(box.y0, -clip);
    box.y1 = std::min(box.y1, clip);
    return box;
  }

  std::string describe() const {
    std::string s = to_string(geometry);
    s += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) s += ',';
      s += expr::format_number(params[i]);
    }
    s += ')';
    if (std::isfinite(clip)) s += " & B_" + expr::format_number(clip);
    if (exclude > 0.0) s += " \\ B_" + expr::format_number(exclude);
    return s;
  }

 private:
  DomainSpec offset(double d) const {
    DomainSpec out = *this;
    switch (geometry) {
      case Geometry::interval:
        out.params = {params[0] - d, params[1] + d};
        break;
      case Geometry::half_line:
        out.params = {params[0] - d};
        break;
      case Geometry::rectangle:
        out.params = {params[0] - d, params[1] + d, params[2] - d, params[3] + d};
        break;
      case Geometry::disk:
        out.params = {params[0], params[1], params[2] + d};
        break;
      case Geometry::annulus:
        out.params = {params[0], params[1], std::max(0.0, params[2] - d), params[3] + d};
        break;
      default:
        break;
    }
    if (std::isfinite(clip)) out.clip = clip + d;
    if (exclude > 0.0) out.exclude = std::max(0.0, exclude - d);
    out.validate();
    return out;
  }
};

namespace detail {

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

/// Deterministic low-discrepancy samples of the closure of a bounded domain.
/// The first n samples are a prefix of the first n+1.
inline std::vector<Point> sample_domain(const DomainSpec& dom, int n) {
  std::vector<Point> pts;
  if (dom.dim() == 1) {
    const auto comps = dom.intervals();
    if (comps.empty()) return pts;
    double total = 0.0;
    for (const auto& c : comps) total += c.length();
    for (std::uint64_t i = 0; static_cast<int>(pts.size()) < n; ++i) {
      if (i < 2 * comps.size()) {
        const auto& c = comps[i / 2];
        pts.push_back({i % 2 == 0 ? c.lo : c.hi, 0.0});
        continue;
      }
      double s = radical_inverse(i - 2 * comps.size() + 1, 2) * total;
      for (const auto& c : comps) {
        if (s <= c.length()) {
          pts.push_back({c.lo + s, 0.0});
          break;
        }
        s -= c.length();
      }
    }
    return pts;
  }
  const Box box = dom.bounding_box();
  for (std::uint64_t i = 1; static_cast<int>(pts.size()) < n && i < 64ull * (n + 16); ++i) {
    const Point p{box.x0 + radical_inverse(i, 2) * (box.x1 - box.x0),
                  box.y0 + radical_inverse(i, 3) * (box.y1 - box.y0)};
    if (dom.contains(p)) pts.push_back(p);
  }
  return pts;
}

}  // namespace detail

struct EllipticityRange {
  double min_alpha = kInf;
  double max_alpha = -kInf;
  bool nonuniform = false;
  int samples = 0;
};

/// Smallest and largest diffusion eigenvalue over a deterministic sample of the
/// domain (unbounded domains are truncated at `radius`).
inline EllipticityRange ellipticity_range(const OperatorSpec& op, const DomainSpec& dom,
                                          int n_samples, double radius = 64.0,
                                          double tolerance = 1e-8) {
  if (n_samples < 1) throw PreconditionFailed("n_samples must be at least 1");
  const DomainSpec region = dom.bounded() ? dom : dom.truncation(radius);
  EllipticityRange out;
  for (const Point& p : detail::sample_domain(region, n_samples)) {
    const double lo = op.alpha_min(p);
    if (!(lo > 0.0))
      throw NonElliptic("smallest diffusion eigenvalue " + expr::format_number(lo) + " at x=" +
                        expr::format_number(p.x));
    out.min_alpha = std::min(out.min_alpha, lo);
    out.max_alpha = std::max(out.max_alpha, op.alpha_max(p));
    ++out.samples;
  }
  out.nonuniform = out.min_alpha < tolerance;
  return out;
}

enum class GrowthVerdict { abc3_ok, sub1_ok, neither, unknown };

inline const char* to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::abc3_ok: return "ABC3-ok";
    case GrowthVerdict::sub1_ok: return "sub1-ok";
    case GrowthVerdict::neither: return "neither";
    case GrowthVerdict::unknown: return "unknown";
  }
  return "?";
}

struct GrowthRow {
  double radius;
  double sup_c;        // sup c over Omega & B_radius
  double sup_a;        // sup |a_ii|
  double sup_a_quad;   // sup |a_ii| / |x|^2 over 1 <= |x| <= radius
  double sup_b_quad;   // sup b.x / |x|^2 over 1 <= |x| <= radius
  double sup_b_lin;    // sup b.x / |x|
};

struct GrowthReport {
  std::vector<GrowthRow> rows;
  bool sup_c_bounded = false;
  bool a_quad_bounded = false;
  bool b_quad_bounded = false;
  bool a_bounded = false;
  bool b_lin_bounded = false;
  bool abc3_ok = false;
  bool sub1_ok = false;
  GrowthVerdict verdict = GrowthVerdict::unknown;
  bool heuristic = true;  // finite sampling cannot certify a limsup
  std::string note;
};

namespace detail {

// A sampled sup sequence over growing radii is read as bounded when its last
// increment is small relative to its size.
inline bool stays_bounded(const std::vector<double>& seq, double rel = 0.05) {
  if (seq.size() < 2) return std::isfinite(seq.back());
  const double last = seq.back();
  const double prev = seq[seq.size() - 2];
  if (!std::isfinite(last)) return false;
  return last - prev <= rel * std::max(1.0, std::fabs(prev));
}

}  // namespace detail

/// Sampled growth hypotheses at increasing radii. Both gates are reported in
/// their own flags; the verdict names the weaker one that passes.
inline GrowthReport growth_check(const OperatorSpec& op, const DomainSpec& dom,
                                 const std::vector<double>& radii, int samples_per_radius = 2048) {
  GrowthReport rep;
  if (radii.empty() || !std::is_sorted(radii.begin(), radii.end()) ||
      std::adjacent_find(radii.begin(), radii.end()) != radii.end()) {
    rep.note = "radii must be strictly increasing";
    return rep;
  }
  try {
    GrowthRow acc{0.0, -kInf, -kInf, -kInf, -kInf, -kInf};
    for (double R : radii) {
      const DomainSpec region = dom.truncation(R);
      const auto pts = detail::sample_domain(region, samples_per_radius);
      for (const Point& p : pts) {
        if (!region.contains(p) && dom.dim() == 2) continue;
        const double r = dom.dim() == 1 ? std::fabs(p.x) : std::hypot(p.x, p.y);
        acc.sup_c = std::max(acc.sup_c, op.c(p));
        double amax = 0.0;
        for (int i = 0; i < op.dim; ++i) amax = std::max(amax, std::fabs(op.a_at(i, p)));
        acc.sup_a = std::max(acc.sup_a, amax);
        double bx = op.b_at(0, p) * p.x;
        if (op.dim == 2) bx += op.b_at(1, p) * p.y;
        if (r > 0.0) acc.sup_b_lin = std::max(acc.sup_b_lin, bx / r);
        if (r >= 1.0) {
          acc.sup_a_quad = std::max(acc.sup_a_quad, amax / (r * r));
          acc.sup_b_quad = std::max(acc.sup_b_quad, bx / (r * r));
        }
      }
      acc.radius = R;
      rep.rows.push_back(acc);
    }
  } catch (const DomainError& e) {
    rep.note = e.what();
    rep.verdict = GrowthVerdict::unknown;
    return rep;
  }
  auto column = [&](double GrowthRow::*m) {
    std::vector<double> v;
    for (const auto& row : rep.rows) v.push_back(row.*m);
    return v;
  };
  auto bounded_or_empty = [&](double GrowthRow::*m) {
    auto v = column(m);
    while (!v.empty() && v.front() == -kInf) v.erase(v.begin());
    return v.empty() || detail::stays_bounded(v);
  };
  rep.sup_c_bounded = bounded_or_empty(&GrowthRow::sup_c);
  rep.a_quad_bounded = bounded_or_empty(&GrowthRow::sup_a_quad);
  rep.b_quad_bounded = bounded_or_empty(&GrowthRow::sup_b_quad);
  rep.a_bounded = bounded_or_empty(&GrowthRow::sup_a);
  rep.b_lin_bounded = bounded_or_empty(&GrowthRow::sup_b_lin);
  if (dom.bounded()) {
    rep.sup_c_bounded = rep.a_quad_bounded = rep.b_quad_bounded = true;
    rep.a_bounded = rep.b_lin_bounded = true;
  }
  rep.abc3_ok = rep.sup_c_bounded && rep.a_quad_bounded && rep.b_quad_bounded;
  rep.sub1_ok = rep.sup_c_bounded && rep.a_bounded && rep.b_lin_bounded;
  rep.verdict = rep.abc3_ok   ? GrowthVerdict::abc3_ok
                : rep.sub1_ok ? GrowthVerdict::sub1_ok
                              : GrowthVerdict::neither;
  return rep;
}

}  // namespace eigenlab

#endif  // EIGENLAB_OPSPEC_HPP
