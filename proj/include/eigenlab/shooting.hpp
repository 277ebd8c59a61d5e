#ifndef EIGENLAB_SHOOTING_HPP
#define EIGENLAB_SHOOTING_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "eigenlab/error.hpp"
#include "eigenlab/opspec.hpp"

namespace eigenlab {

struct OdeOptions {
  double rtol = 1e-11;
  double atol = 1e-14;
  long max_steps = 4000000;
};

struct OdeState {
  double x;
  double u;
  double w;  // u' (non-divergence) or a u' (divergence)
};

struct OdeTrace {
  OdeState end{};
  std::vector<OdeState> samples;  // accepted steps, if requested
  long steps = 0;
  int sign_changes = 0;
  double log_scale = 0.0;  // true solution = stored values * exp(log_scale)
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double kB[7] = {35.0 / 384,     0.0, 500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
inline constexpr double kE[7] = {71.0 / 57600,      0.0, -71.0 / 16695, 71.0 / 1920,
                                 -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

}  // namespace detail

/// Integrates (L + lambda) u = 0 in 1D from x0 to x1 (either direction),
/// restarting at every declared breakpoint so coefficient kinks never fall
/// inside a step.
inline OdeTrace integrate_1d(const OperatorSpec& op, double lambda, double x0, double u0, double w0,
                             double x1, const OdeOptions& opt = {}, bool record = false) {
  if (op.dim != 1) throw PreconditionFailed("shooting is 1D");
  const double dir = x1 >= x0 ? 1.0 : -1.0;
  std::vector<double> knots{x0};
  {
    std::vector<double> inner;
    for (double b : op.breakpoints)
      if ((b - x0) * dir > 0.0 && (x1 - b) * dir > 0.0) inner.push_back(b);
    std::sort(inner.begin(), inner.end(), [dir](double p, double q) { return p * dir < q * dir; });
    knots.insert(knots.end(), inner.begin(), inner.end());
  }
  knots.push_back(x1);

  OdeTrace tr;
  std::array<double, 2> y{u0, w0};
  double last_sign = 0.0;
  if (record) tr.samples.push_back({x0, u0, w0});

  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const double sa = knots[s];
    const double sb = knots[s + 1];
    const double seg_lo = std::min(sa, sb), seg_hi = std::max(sa, sb);
    const double eps = 1e-12 * std::max(1.0, std::max(std::fabs(seg_lo), std::fabs(seg_hi)));
    auto clampx = [&](double x) { return std::clamp(x, seg_lo + eps, seg_hi - eps); };
    auto rhs = [&](double x, const std::array<double, 2>& v) {
      const Point p{clampx(x), 0.0};
      const double a = op.a[0](p);
      const double q = op.c(p) + lambda;
      if (op.form == Form::divergence) return std::array<double, 2>{v[1] / a, -q * v[0]};
      const double b = op.b[0](p);
      return std::array<double, 2>{v[1], -(b * v[1] + q * v[0]) / a};
    };
    // Cap the step by the segment length and the local oscillation scale.
    const double len = seg_hi - seg_lo;
    double omega = 0.0;
    for (int i = 0; i <= 64; ++i) {
      const Point p{clampx(seg_lo + len * i / 64.0), 0.0};
      const double a = op.a[0](p);
      omega = std::max(omega, std::fabs(op.c(p) + lambda) / a);
      if (op.form == Form::non_divergence) omega = std::max(omega, std::pow(op.b[0](p) / a, 2));
    }
    const double hmax = std::min(len / 16.0, omega > 0.0 ? 0.5 / std::sqrt(omega) : len);
    double x = sa;
    double h = std::min(hmax, len / 64.0) * dir;
    while ((sb - x) * dir > 0.0) {
      if (tr.steps++ > opt.max_steps) throw StiffnessFailure("step budget exhausted");
      if ((x + h - sb) * dir > 0.0) h = sb - x;
      std::array<std::array<double, 2>, 7> k;
      k[0] = rhs(x, y);
      for (int st = 1; st < 7; ++st) {
        std::array<double, 2> yt = y;
        for (int j = 0; j < st; ++j)
          for (int c = 0; c < 2; ++c) yt[c] += h * detail::kA[st][j] * k[j][c];
        k[st] = rhs(x + detail::kC[st] * h, yt);
      }
      std::array<double, 2> yn = y;
      std::array<double, 2> err{0.0, 0.0};
      for (int st = 0; st < 7; ++st)
        for (int c = 0; c < 2; ++c) {
          yn[c] += h * detail::kB[st] * k[st][c];
          err[c] += h * detail::kE[st] * k[st][c];
        }
      const double mag = std::max({std::fabs(y[0]), std::fabs(y[1]), std::fabs(yn[0]), std::fabs(yn[1])});
      const double scale = opt.atol * std::max(1.0, mag) + opt.rtol * mag;
      const double en = std::max(std::fabs(err[0]), std::fabs(err[1])) / scale;
      if (en <= 1.0 && std::isfinite(yn[0]) && std::isfinite(yn[1])) {
        x += h;
        if ((sb - x) * dir <= 0.0) x = sb;
        y = yn;
        const double sg = y[0] > 0.0 ? 1.0 : (y[0] < 0.0 ? -1.0 : 0.0);
        if (sg != 0.0) {
          if (last_sign != 0.0 && sg != last_sign) ++tr.sign_changes;
          last_sign = sg;
        }
        const double big = std::max(std::fabs(y[0]), std::fabs(y[1]));
        if (big > 1e100) {
          y[0] *= 1e-100;
          y[1] *= 1e-100;
          tr.log_scale += 100.0 * std::log(10.0);
        }
        if (record) tr.samples.push_back({x, y[0], y[1]});
      }
      const double fac = en > 0.0 ? 0.9 * std::pow(en, -0.2) : 5.0;
      const double hn = std::fabs(h) * std::clamp(fac, 0.2, 5.0);
      h = std::min(hn, hmax) * dir;
      if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(x)))
        throw StiffnessFailure("step size underflow near x=" + std::to_string(x));
    }
  }
  tr.end = {x1, y[0], y[1]};
  return tr;
}

struct ShootResult {
  bool disconjugate = false;
  int zeros = 0;
  double u_end = 0.0;  // u(r) relative to |u'(r)| scale
  long steps = 0;
};

/// Shooting from the left endpoint with u = 0, u' = 1; zero count on (l, r].
inline ShootResult shoot_1d(const OperatorSpec& op, Interval iv, double lambda,
                            const OdeOptions& opt = {}) {
  if (!iv.bounded() || !(iv.lo < iv.hi)) throw PreconditionFailed("shooting needs a bounded interval");
  const double w0 = op.form == Form::divergence ? op.a[0](Point{iv.lo, 0.0}) : 1.0;
  const OdeTrace tr = integrate_1d(op, lambda, iv.lo, 0.0, w0, iv.hi, opt);
  ShootResult r;
  const double norm = std::max(std::fabs(tr.end.u), std::fabs(tr.end.w));
  r.u_end = norm > 0.0 ? tr.end.u / norm : 0.0;
  r.zeros = tr.sign_changes + (tr.end.u == 0.0 ? 1 : 0);
  r.disconjugate = r.zeros == 0 && tr.end.u > 0.0;
  r.steps = tr.steps;
  return r;
}

/// lambda_1 on a bounded interval as the disconjugacy threshold: bracket by
/// doubling, then bisection.
inline double eig_1d_shooting(const OperatorSpec& op, Interval iv, double tol = 1e-10,
                              const OdeOptions& opt = {}) {
  double sup_c = -kInf;
  for (int i = 0; i <= 2048; ++i)
    sup_c = std::max(sup_c, op.c(Point{iv.lo + (iv.hi - iv.lo) * i / 2048.0, 0.0}));
  auto above = [&](double lam) { return !shoot_1d(op, iv, lam, opt).disconjugate; };
  double lo = -sup_c - 1.0;
  double step = 1.0;
  for (int i = 0; above(lo); ++i) {
    if (i > 60) throw BracketFailure("no disconjugate lower bracket");
    lo -= step;
    step *= 2.0;
  }
  double hi = lo + 1.0;
  step = 1.0;
  for (int i = 0; !above(hi); ++i) {
    if (i > 80) throw BracketFailure("no upper bracket below " + std::to_string(hi));
    lo = hi;
    step *= 2.0;
    hi += step;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (above(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace eigenlab

#endif  // EIGENLAB_SHOOTING_HPP
