#ifndef EIGENLAB_PERRON_HPP
#define EIGENLAB_PERRON_HPP

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eigenlab/discretize.hpp"
#include "eigenlab/error.hpp"

namespace eigenlab {

/// Principal eigenpair of -A: -A phi = lambda phi, phi > 0, max(phi) = 1.
struct EigenResult {
  double lambda = std::numeric_limits<double>::quiet_NaN();
  Vector phi;
  double residual = kInf;      // ||A phi + lambda phi||_inf
  double rel_residual = kInf;  // residual / max(1, ||A||_inf)
  int iterations = 0;
  std::string method;  // power | shift-invert | dense
  double imag_part = 0.0;
};

class NoConvergence : public Error {
 public:
  NoConvergence(int max_iter, EigenResult best, const std::string& detail = {})
      : Error(ErrorCategory::numeric, "NoConvergence",
              "no convergence within " + std::to_string(max_iter) + " iterations" +
                  (detail.empty() ? std::string{} : " (" + detail + ")")),
        max_iter_(max_iter),
        best_(std::move(best)) {}
  int max_iter() const noexcept { return max_iter_; }
  const EigenResult& best() const noexcept { return best_; }

 private:
  int max_iter_;
  EigenResult best_;
};

namespace detail {

inline bool is_tridiagonal(const SparseMatrix& A) {
  for (Eigen::Index i = 0; i < A.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(A, i); it; ++it)
      if (std::abs(it.col() - i) > 1) return false;
  return true;
}

struct Tridiagonal {
  std::vector<double> lower, diag, upper;  // lower[i] = A(i,i-1), upper[i] = A(i,i+1)

  explicit Tridiagonal(const SparseMatrix& A) {
    const auto n = static_cast<std::size_t>(A.rows());
    lower.assign(n, 0.0);
    diag.assign(n, 0.0);
    upper.assign(n, 0.0);
    for (Eigen::Index i = 0; i < A.outerSize(); ++i)
      for (SparseMatrix::InnerIterator it(A, i); it; ++it) {
        const auto r = static_cast<std::size_t>(i);
        if (it.col() == i) diag[r] = it.value();
        else if (it.col() == i - 1) lower[r] = it.value();
        else upper[r] = it.value();
      }
  }
};

/// Solves (sigma I - A) x = rhs for a (sigma I - A) that is a nonsingular
/// M-matrix, either tridiagonal (Thomas) or general sparse (LU).
class ShiftedSolver {
 public:
  explicit ShiftedSolver(const SparseMatrix& A) : A_(A) {
    if (is_tridiagonal(A)) tri_.emplace(A);
  }

  bool factor(double sigma) {
    sigma_ = sigma;
    if (tri_) {
      const std::size_t n = tri_->diag.size();
      cprime_.assign(n, 0.0);
      denom_.assign(n, 0.0);
      double prev = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double b = sigma - tri_->diag[i];
        const double a = -tri_->lower[i];
        const double d = b - (i ? a * prev : 0.0);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        denom_[i] = d;
        prev = -tri_->upper[i] / d;
        cprime_[i] = prev;
      }
      return true;
    }
    Eigen::SparseMatrix<double> M = -A_;
    for (Eigen::Index i = 0; i < M.rows(); ++i) M.coeffRef(i, i) += sigma;
    M.makeCompressed();
    lu_.compute(M);
    return lu_.info() == Eigen::Success;
  }

  Vector solve(const Vector& rhs) {
    if (tri_) {
      const std::size_t n = tri_->diag.size();
      Vector x(static_cast<Eigen::Index>(n));
      std::vector<double> dp(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double a = -tri_->lower[i];
        dp[i] = (rhs[static_cast<Eigen::Index>(i)] - (i ? a * dp[i - 1] : 0.0)) / denom_[i];
      }
      x[static_cast<Eigen::Index>(n - 1)] = dp[n - 1];
      for (std::size_t i = n - 1; i-- > 0;)
        x[static_cast<Eigen::Index>(i)] = dp[i] - cprime_[i] * x[static_cast<Eigen::Index>(i + 1)];
      return x;
    }
    return lu_.solve(rhs);
  }

  double sigma() const { return sigma_; }

 private:
  const SparseMatrix& A_;
  std::optional<Tridiagonal> tri_;
  std::vector<double> cprime_, denom_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  double sigma_ = 0.0;
};

// Collatz-Wielandt bounds of the top eigenvalue of the Z-matrix A at v > 0.
inline std::pair<double, double> collatz_wielandt(const Vector& Av, const Vector& v) {
  double lo = kInf, hi = -kInf;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double q = Av[i] / v[i];
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  return {lo, hi};
}

inline double rayleigh_lambda(const Vector& Av, const Vector& v) { return -v.dot(Av) / v.dot(v); }

}  // namespace detail

/// Perron pair of -A for an irreducible Z-matrix A. A power phase on
/// P = sI + A runs first and hands over to shift-invert iteration when it
/// stagnates or would not finish in budget.
inline EigenResult principal_eig(const DiscreteOperator& D, double tol = 1e-10,
                                 int max_iter = 50000) {
  if (!(tol > 0.0)) throw PreconditionFailed("tol must be positive");
  const Eigen::Index n = D.size();
  if (n == 0) throw DegenerateDomain("empty operator");
  if (!D.irreducible) throw Reducible("stencil graph is not strongly connected");
  const SparseMatrix& A = D.A;
  const double scale = std::max(1.0, D.inf_norm());
  // Relative target on the eigenvalue scale; below the rounding floor of A
  // only stagnation can be detected.
  const double floor_gap = 1024.0 * std::numeric_limits<double>::epsilon() * scale;
  double target = tol;

  // An iterate is accepted once its Collatz-Wielandt bracket, which encloses
  // the Perron root for any positive vector, is narrower than the target.
  EigenResult best;
  double best_gap = kInf;
  double cur_gap = kInf;
  auto record = [&](const Vector& v, const Vector& Av, int it, const char* method) {
    EigenResult r;
    const double peak = v.cwiseAbs().maxCoeff();
    r.phi = v / peak;
    const Vector Ap = Av / peak;
    cur_gap = kInf;
    if ((r.phi.array() > 0.0).all()) {
      const auto [lo, hi] = detail::collatz_wielandt(Ap, r.phi);
      cur_gap = hi - lo;
      r.lambda = -0.5 * (lo + hi);
    } else {
      r.lambda = detail::rayleigh_lambda(Ap, r.phi);
    }
    r.residual = (Ap + r.lambda * r.phi).cwiseAbs().maxCoeff();
    r.rel_residual = r.residual / scale;
    r.iterations = it;
    r.method = method;
    target = tol * std::max(1.0, std::fabs(r.lambda));
    if (cur_gap < best_gap || (best_gap == kInf && !(r.residual >= best.residual))) {
      best = r;
      best_gap = cur_gap;
    }
    return r;
  };

  double s = -kInf;
  for (Eigen::Index i = 0; i < n; ++i) s = std::max(s, -A.coeff(i, i));
  s += 1.0;

  Vector v = Vector::Ones(n);
  Vector Av = A * v;
  int it = 0;
  record(v, Av, it, "power");
  if (cur_gap <= target) return best;

  // Power phase.
  const int window = 50;
  double lambda_mark = best.lambda;
  double res_mark = best.residual;
  while (it < max_iter) {
    Vector w = Av + s * v;
    v = w / w.maxCoeff();
    Av = A * v;
    ++it;
    const EigenResult cur = record(v, Av, it, "power");
    if (cur_gap <= target) return cur;
    if (it % window == 0) {
      const double moved = std::fabs(cur.lambda - lambda_mark);
      const double rate = std::pow(cur.residual / res_mark, 1.0 / window);
      const double needed = rate < 1.0 ? std::log(target / cur.residual) / std::log(rate) : kInf;
      if (moved < tol / 10.0 * std::max(1.0, std::fabs(cur.lambda)) || needed > 4.0 * window ||
          needed > max_iter - it)
        break;
      lambda_mark = cur.lambda;
      res_mark = cur.residual;
    }
  }
  if (it >= max_iter) throw NoConvergence(max_iter, best, "power phase");

  // Shift-invert phase; the shift is kept above the Collatz-Wielandt upper
  // bound so that sigma*I - A stays a nonsingular M-matrix.
  detail::ShiftedSolver solver(A);
  bool factored = false;
  double boost = 1.0;
  int since_improvement = 0;
  double best_res = best_gap;
  while (it < max_iter) {
    if ((v.array() <= 0.0).any()) {
      v = best.phi.cwiseAbs().cwiseMax(1e-300);
      Av = A * v;
    }
    auto [lo, hi] = detail::collatz_wielandt(Av, v);
    // hi bounds the Perron root from above, so a small offset keeps the
    // contraction ratio far below 1 even while the bracket is still wide.
    const double gap =
        std::max(1e-13 * scale, std::min(hi - lo, 1e-3 * std::max(1.0, std::fabs(hi)))) * boost;
    const double want = hi + gap;
    if (!factored || solver.sigma() <= hi || solver.sigma() - hi > 8.0 * gap) {
      if (!solver.factor(want)) {
        boost *= 10.0;
        ++it;
        continue;
      }
      factored = true;
    }
    Vector w = solver.solve(v);
    ++it;
    if (!w.allFinite() || (w.array() <= 0.0).any()) {
      boost *= 10.0;
      factored = false;
      continue;
    }
    boost = std::max(1.0, boost / 2.0);
    v = w / w.maxCoeff();
    Av = A * v;
    const EigenResult cur = record(v, Av, it, "shift-invert");
    if (cur_gap <= target) return cur;
    if (cur_gap < 0.999 * best_res) {
      best_res = cur_gap;
      since_improvement = 0;
    } else if (++since_improvement > 12) {
      if (best_gap <= floor_gap) return best;
      throw NoConvergence(max_iter, best, "stagnated");
    }
  }
  throw NoConvergence(max_iter, best);
}

/// Brute-force eigendecomposition of A; the Perron pair of -A.
inline EigenResult dense_oracle(const DiscreteOperator& D, std::size_t max_nodes = 2000) {
  const Eigen::Index n = D.size();
  if (static_cast<std::size_t>(n) > max_nodes)
    throw SizeExceeded(std::to_string(n) + " nodes exceed the dense limit " +
                       std::to_string(max_nodes));
  if (n == 0) throw DegenerateDomain("empty operator");
  const Eigen::MatrixXd M = Eigen::MatrixXd(D.A);
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, true);
  if (es.info() != Eigen::Success) throw PerronViolation("dense eigensolver failed");
  Eigen::Index k = 0;
  for (Eigen::Index i = 1; i < n; ++i)
    if (es.eigenvalues()[i].real() > es.eigenvalues()[k].real()) k = i;
  Vector phi = es.eigenvectors().col(k).real();
  const double peak = phi.cwiseAbs().maxCoeff();
  if (phi.sum() < 0.0) phi = -phi;
  phi /= peak;
  for (Eigen::Index i = 0; i < n; ++i)
    if (phi[i] < -1e-8) throw PerronViolation("principal eigenvector is not one-signed");
  EigenResult r;
  r.lambda = -es.eigenvalues()[k].real();
  r.imag_part = std::fabs(es.eigenvalues()[k].imag());
  r.phi = phi.cwiseMax(0.0);
  r.residual = (M * phi + r.lambda * phi).cwiseAbs().maxCoeff();
  r.rel_residual = r.residual / std::max(1.0, D.inf_norm());
  r.method = "dense";
  return r;
}

/// Number of eigenvalues of the symmetric tridiagonal (d, e) below x.
inline int sturm_count(const std::vector<double>& d, const std::vector<double>& e2, double x) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = d[i] - x - (i ? e2[i] / q : 0.0);
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

/// k-th smallest eigenvalue (k = 0 principal) of -A for a tridiagonal A
/// whose off-diagonal products A(i,i+1) A(i+1,i) are positive. Such an A is
/// diagonally similar to the symmetric matrix with off-diagonals
/// sqrt(A(i,i+1) A(i+1,i)); Sturm bisection runs on that matrix.
inline double tridiagonal_eigenvalue(const DiscreteOperator& D, int k = 0) {
  if (!detail::is_tridiagonal(D.A)) throw NotSymmetric("operator is not tridiagonal");
  const detail::Tridiagonal t(D.A);
  const std::size_t n = t.diag.size();
  if (k < 0 || static_cast<std::size_t>(k) >= n) throw PreconditionFailed("eigen index out of range");
  std::vector<double> d(n), e2(n, 0.0);
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = -t.diag[i];
    if (i) {
      e2[i] = t.upper[i - 1] * t.lower[i];
      if (!(e2[i] > 0.0)) throw NotSymmetric("off-diagonal product is not positive");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i ? std::sqrt(e2[i]) : 0.0) + (i + 1 < n ? std::sqrt(e2[i + 1]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  for (int iter = 0; iter < 200 && hi - lo > 4e-16 * std::max(std::fabs(lo), std::fabs(hi)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(d, e2, mid) > k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

/// Smallest eigenvalue of -A for a self-adjoint assembly (M*A symmetric).
inline double rayleigh_min(const DiscreteOperator& D, std::size_t max_dense = 2000) {
  const SparseMatrix& A = D.A;
  const Vector& m = D.mass;
  double worst = 0.0;
  const double scale = std::max(1.0, D.inf_norm()) * std::max(1.0, m.maxCoeff());
  for (Eigen::Index i = 0; i < A.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(A, i); it; ++it)
      if (it.col() > i)
        worst = std::max(worst, std::fabs(m[i] * it.value() - m[it.col()] * A.coeff(it.col(), i)));
  if (worst > 1e-12 * scale) throw NotSymmetric("mass-weighted matrix is not symmetric");
  if (detail::is_tridiagonal(A) && D.size() > 1 && D.irreducible) return tridiagonal_eigenvalue(D, 0);
  if (static_cast<std::size_t>(D.size()) > max_dense)
    throw SizeExceeded("symmetric dense solve limited to " + std::to_string(max_dense) + " nodes");
  const Vector sq = m.cwiseSqrt();
  Eigen::MatrixXd S = Eigen::MatrixXd(A);
  S = -(sq.asDiagonal() * S * sq.cwiseInverse().asDiagonal());
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

/// Discrete Rayleigh quotient of a test function: midpoint differences for
/// the gradient term, nodal quadrature (trapezoid with zero boundary values)
/// for the zeroth-order terms.
inline double rayleigh_quotient(const OperatorSpec& op, const Grid& g, const ScalarField& phi) {
  if (!op.self_adjoint()) throw PreconditionFailed("Rayleigh quotient needs a self-adjoint operator");
  double num = 0.0, den = 0.0;
  auto value = [&](int idx) { return idx < 0 ? 0.0 : phi(g.points[static_cast<std::size_t>(idx)]); };
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point& p = g.points[k];
    const double u = phi(p);
    double vol = 1.0;
    for (int d = 0; d < g.dim; ++d)
      vol *= (g.spacing[k][static_cast<std::size_t>(2 * d)] + g.spacing[k][static_cast<std::size_t>(2 * d + 1)]) / 2.0;
    num -= detail::coeff_at(op.c, p, op) * u * u * vol;
    den += u * u * vol;
    for (int d = 0; d < g.dim; ++d) {
      const std::size_t il = static_cast<std::size_t>(2 * d);
      const double cross = g.dim == 2 ? (g.spacing[k][2 - il] + g.spacing[k][3 - il]) / 2.0 : 1.0;
      // Each edge once: from its left node, plus edges entering from a Dirichlet node.
      const double hr = g.spacing[k][il + 1];
      Point mid = p;
      (d == 0 ? mid.x : mid.y) += hr / 2.0;
      const double du = value(g.nbr[k][il + 1]) - u;
      num += op.a[static_cast<std::size_t>(d)](mid) * du * du / hr * cross;
      if (g.nbr[k][il] < 0) {
        const double hl = g.spacing[k][il];
        Point ml = p;
        (d == 0 ? ml.x : ml.y) -= hl / 2.0;
        num += op.a[static_cast<std::size_t>(d)](ml) * u * u / hl * cross;
      }
    }
  }
  if (!(den > 0.0)) throw ZeroDenominator("test function vanishes on the grid");
  return num / den;
}

/// Bounded-domain solve on nested grids h and h/2 with Richardson
/// extrapolation (order 2 for fully central stencils, 1 otherwise).
struct BoundedSolve {
  EigenResult coarse;
  EigenResult fine;
  double extrapolated = 0.0;
  double error_estimate = 0.0;
  int order = 2;
  double h = 0.0;
  std::shared_ptr<const Grid> fine_grid;
};

inline BoundedSolve solve_bounded(const OperatorSpec& op, const DomainSpec& dom, double h,
                                  double tol = 1e-10, int max_iter = 50000,
                                  DriftScheme scheme = DriftScheme::hybrid) {
  BoundedSolve out;
  out.h = h;
  const auto D0 = discretize(op, dom, h, 0, scheme);
  const auto D1 = discretize(op, dom, h, 1, scheme);
  out.coarse = principal_eig(D0, tol, max_iter);
  out.fine = principal_eig(D1, tol, max_iter);
  out.fine_grid = D1.grid;
  out.order = (D0.upwind_nodes > 0 || D1.upwind_nodes > 0) ? 1 : 2;
  const double f = std::pow(2.0, out.order) - 1.0;
  out.extrapolated = out.fine.lambda + (out.fine.lambda - out.coarse.lambda) / f;
  out.error_estimate = std::fabs(out.fine.lambda - out.coarse.lambda) / f;
  return out;
}

/// Principal eigenvalue of a periodic 1D operator on one period (positive
/// periodic eigenfunction): dense solves on nested cyclic grids, Richardson
/// extrapolated.
inline EigenResult periodic_eig(const OperatorSpec& op, double period, int n = 1024) {
  const auto D0 = assemble_periodic(op, period, n / 2);
  const auto D1 = assemble_periodic(op, period, n);
  EigenResult r;
  if (D1.symmetric_form) {
    const double l0 = rayleigh_min(D0, 4096);
    const double l1 = rayleigh_min(D1, 4096);
    r.lambda = l1 + (l1 - l0) / 3.0;
  } else {
    const EigenResult r0 = dense_oracle(D0, 4096);
    r = dense_oracle(D1, 4096);
    r.lambda = r.lambda + (r.lambda - r0.lambda) / 3.0;
  }
  r.method = "dense-periodic";
  return r;
}

}  // namespace eigenlab

#endif  // EIGENLAB_PERRON_HPP
