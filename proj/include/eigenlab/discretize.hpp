#ifndef EIGENLAB_DISCRETIZE_HPP
#define EIGENLAB_DISCRETIZE_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <ostream>
#include <queue>
#include <string>
#include <vector>

#include "eigenlab/error.hpp"
#include "eigenlab/opspec.hpp"

namespace eigenlab {

using Vector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Nodes of a bounded domain. Only interior (unknown) nodes are enumerated;
/// every stencil neighbor outside the interior is an eliminated Dirichlet node.
struct Grid {
  int dim = 1;
  double h = 0.0;
  int refine_level = 0;
  std::vector<std::vector<double>> lines;  // 1D: node coordinates per component, endpoints included
  std::vector<double> xs, ys;              // 2D tensor axes
  std::vector<char> interior_mask;         // 2D: xs.size() * ys.size(), row-major in y
  std::vector<Point> points;               // interior nodes
  // Per interior node, 2*dim neighbors ordered (-x, +x, -y, +y); -1 marks a
  // Dirichlet node. Spacings are distances to those neighbors.
  std::vector<std::array<int, 4>> nbr;
  std::vector<std::array<double, 4>> spacing;

  std::size_t size() const { return points.size(); }

  double max_spacing() const {
    double m = 0.0;
    for (const auto& s : spacing)
      for (int d = 0; d < 2 * dim; ++d) m = std::max(m, s[static_cast<std::size_t>(d)]);
    return m;
  }

  /// Sample a field at interior nodes.
  Vector sample(const ScalarField& f) const {
    Vector v(static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < size(); ++k) v[static_cast<Eigen::Index>(k)] = f(points[k]);
    return v;
  }
};

namespace detail {

inline std::vector<double> axis_nodes(double lo, double hi, std::vector<double> bps, double h,
                                      int level) {
  std::vector<double> knots{lo};
  std::sort(bps.begin(), bps.end());
  for (double b : bps)
    if (b > lo && b < hi && b > knots.back()) knots.push_back(b);
  knots.push_back(hi);
  // At least two subintervals so that one unknown exists.
  const double len = hi - lo;
  const double hh = std::min(h, len / 2.0);
  std::vector<double> nodes{lo};
  const long factor = 1L << level;
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const double a = knots[s];
    const double b = knots[s + 1];
    const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / hh - 1e-9))) * factor;
    for (long i = 1; i < n; ++i)
      nodes.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
    nodes.push_back(b);
  }
  return nodes;
}

}  // namespace detail

/// Grid aligned to the declared breakpoints. `refine_level` halves every cell
/// that many times, so level k+1 is nested in level k.
inline Grid build_grid(const DomainSpec& dom, double h, const std::vector<double>& breakpoints = {},
                       const std::vector<double>& breakpoints_y = {}, int refine_level = 0) {
  if (!(h > 0.0)) throw PreconditionFailed("grid spacing must be positive");
  if (!dom.bounded()) throw PreconditionFailed("grid requires a bounded domain");
  Grid g;
  g.dim = dom.dim();
  g.h = h / static_cast<double>(1L << refine_level);
  g.refine_level = refine_level;
  if (g.dim == 1) {
    const auto comps = dom.intervals();
    double widest = 0.0;
    for (const auto& c : comps) widest = std::max(widest, c.length());
    if (comps.empty() || widest < h) throw DegenerateDomain("domain is thinner than h");
    for (const auto& c : comps) {
      auto line = detail::axis_nodes(c.lo, c.hi, breakpoints, h, refine_level);
      const int base = static_cast<int>(g.points.size());
      const int m = static_cast<int>(line.size()) - 2;
      for (int i = 1; i <= m; ++i) {
        const std::size_t u = static_cast<std::size_t>(i);
        g.points.push_back({line[u], 0.0});
        g.nbr.push_back({i > 1 ? base + i - 2 : -1, i < m ? base + i : -1, -1, -1});
        g.spacing.push_back({line[u] - line[u - 1], line[u + 1] - line[u], 0.0, 0.0});
      }
      g.lines.push_back(std::move(line));
    }
  } else {
    const Box box = dom.bounding_box();
    if (box.x1 - box.x0 < h || box.y1 - box.y0 < h)
      throw DegenerateDomain("domain is thinner than h");
    g.xs = detail::axis_nodes(box.x0, box.x1, breakpoints, h, refine_level);
    g.ys = detail::axis_nodes(box.y0, box.y1, breakpoints_y, h, refine_level);
    const std::size_t nx = g.xs.size();
    const std::size_t ny = g.ys.size();
    g.interior_mask.assign(nx * ny, 0);
    std::vector<int> slot(nx * ny, -1);
    for (std::size_t j = 1; j + 1 < ny; ++j)
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        const Point p{g.xs[i], g.ys[j]};
        if (dom.contains(p)) {
          g.interior_mask[j * nx + i] = 1;
          slot[j * nx + i] = static_cast<int>(g.points.size());
          g.points.push_back(p);
        }
      }
    if (g.points.empty()) throw DegenerateDomain("no interior grid nodes");
    for (std::size_t j = 1; j + 1 < ny; ++j)
      for (std::size_t i = 1; i + 1 < nx; ++i) {
        if (!g.interior_mask[j * nx + i]) continue;
        g.nbr.push_back({slot[j * nx + i - 1], slot[j * nx + i + 1], slot[(j - 1) * nx + i],
                         slot[(j + 1) * nx + i]});
        g.spacing.push_back({g.xs[i] - g.xs[i - 1], g.xs[i + 1] - g.xs[i], g.ys[j] - g.ys[j - 1],
                             g.ys[j + 1] - g.ys[j]});
      }
  }
  return g;
}

inline Grid build_grid(const DomainSpec& dom, double h, const OperatorSpec& op,
                       int refine_level = 0) {
  return build_grid(dom, h, op.breakpoints, op.breakpoints_y, refine_level);
}

enum class DriftScheme { hybrid, upwind };

/// Sparse realization of L on the interior nodes of a grid.
struct DiscreteOperator {
  SparseMatrix A;
  std::shared_ptr<const Grid> grid;
  Vector mass;  // cell volumes; M*A is symmetric for self-adjoint operators
  double diag_sup = 0.0;
  double offdiag_min = 0.0;
  bool irreducible = false;
  bool symmetric_form = false;
  int upwind_nodes = 0;

  Eigen::Index size() const { return A.rows(); }

  static DiscreteOperator from_matrix(SparseMatrix A, std::shared_ptr<const Grid> grid = nullptr,
                                      Vector mass = Vector()) {
    DiscreteOperator D;
    D.A = std::move(A);
    D.A.makeCompressed();
    D.grid = std::move(grid);
    D.mass = mass.size() == D.A.rows() ? std::move(mass) : Vector::Ones(D.A.rows());
    D.refresh_metadata();
    return D;
  }

  void refresh_metadata() {
    diag_sup = -kInf;
    offdiag_min = kInf;
    for (Eigen::Index i = 0; i < A.outerSize(); ++i)
      for (SparseMatrix::InnerIterator it(A, i); it; ++it) {
        if (it.col() == i)
          diag_sup = std::max(diag_sup, it.value());
        else
          offdiag_min = std::min(offdiag_min, it.value());
      }
    if (diag_sup == -kInf) diag_sup = 0.0;
    if (offdiag_min == kInf) offdiag_min = 0.0;
    irreducible = strongly_connected();
  }

  /// Largest row sum of |A| beyond the diagonal; sigma > max_i(A_ii + this)
  /// makes sigma*I - A strictly diagonally dominant.
  double gershgorin_sup() const {
    double m = -kInf;
    for (Eigen::Index i = 0; i < A.outerSize(); ++i) {
      double row = 0.0;
      for (SparseMatrix::InnerIterator it(A, i); it; ++it)
        if (it.col() != i) row += std::fabs(it.value());
      m = std::max(m, A.coeff(i, i) + row);
    }
    return m;
  }

  double inf_norm() const {
    double m = 0.0;
    for (Eigen::Index i = 0; i < A.outerSize(); ++i) {
      double row = 0.0;
      for (SparseMatrix::InnerIterator it(A, i); it; ++it) row += std::fabs(it.value());
      m = std::max(m, row);
    }
    return m;
  }

 private:
  bool strongly_connected() const {
    const Eigen::Index n = A.rows();
    if (n == 0) return false;
    if (n == 1) return true;
    std::vector<std::vector<Eigen::Index>> fwd(static_cast<std::size_t>(n)),
        bwd(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
      for (SparseMatrix::InnerIterator it(A, i); it; ++it)
        if (it.col() != i && it.value() != 0.0) {
          fwd[static_cast<std::size_t>(i)].push_back(it.col());
          bwd[static_cast<std::size_t>(it.col())].push_back(i);
        }
    auto reaches_all = [n](const std::vector<std::vector<Eigen::Index>>& adj) {
      std::vector<char> seen(static_cast<std::size_t>(n), 0);
      std::queue<Eigen::Index> q;
      q.push(0);
      seen[0] = 1;
      Eigen::Index count = 1;
      while (!q.empty()) {
        const Eigen::Index u = q.front();
        q.pop();
        for (Eigen::Index v : adj[static_cast<std::size_t>(u)])
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            ++count;
            q.push(v);
          }
      }
      return count == n;
    };
    return reaches_all(fwd) && reaches_all(bwd);
  }
};

namespace detail {

inline bool near_any(double v, const std::vector<double>& bps) {
  for (double b : bps)
    if (std::fabs(v - b) <= 1e-12 * std::max(1.0, std::fabs(b))) return true;
  return false;
}

/// Node value of a coefficient; on a declared breakpoint the mean of the
/// one-sided limits.
inline double coeff_at(const ScalarField& f, const Point& p, const OperatorSpec& op) {
  const bool kx = near_any(p.x, op.breakpoints);
  const bool ky = op.dim == 2 && near_any(p.y, op.breakpoints_y);
  if (!kx && !ky) return f(p);
  const double ex = kx ? 1e-9 * std::max(1.0, std::fabs(p.x)) : 0.0;
  const double ey = ky ? 1e-9 * std::max(1.0, std::fabs(p.y)) : 0.0;
  double s = 0.0;
  int n = 0;
  for (int sx = -1; sx <= 1; sx += 2)
    for (int sy = -1; sy <= 1; sy += 2) {
      s += f(Point{p.x + sx * ex, p.y + sy * ey});
      ++n;
    }
  return s / n;
}

}  // namespace detail

/// Monotone finite-difference assembly with Dirichlet elimination.
/// Non-divergence form: central second differences; drift is central where
/// the local Peclet condition keeps both off-diagonals positive, upwind
/// otherwise (always upwind under DriftScheme::upwind).
/// Divergence form: flux differences with midpoint diffusion.
inline DiscreteOperator assemble(const OperatorSpec& op, std::shared_ptr<const Grid> grid,
                                 DriftScheme scheme = DriftScheme::hybrid) {
  op.validate();
  const Grid& g = *grid;
  if (op.dim != g.dim) throw PreconditionFailed("operator and grid dimensions differ");
  const std::size_t n = g.size();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(n * (1 + 2 * static_cast<std::size_t>(g.dim)));
  Vector mass = Vector::Ones(static_cast<Eigen::Index>(n));
  int upwind = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Point& p = g.points[k];
    double diag = detail::coeff_at(op.c, p, op);
    double node_mass = 1.0;
    bool upwinded = false;
    for (int d = 0; d < g.dim; ++d) {
      const std::size_t il = static_cast<std::size_t>(2 * d);
      const std::size_t ir = il + 1;
      const double hl = g.spacing[k][il];
      const double hr = g.spacing[k][ir];
      double wl = 0.0;
      double wr = 0.0;
      if (op.form == Form::divergence) {
        Point pl = p, pr = p;
        (d == 0 ? pl.x : pl.y) -= hl / 2.0;
        (d == 0 ? pr.x : pr.y) += hr / 2.0;
        const double al = op.a[static_cast<std::size_t>(d)](pl);
        const double ar = op.a[static_cast<std::size_t>(d)](pr);
        if (!(al > 0.0 && ar > 0.0)) throw NonElliptic("a is not positive near node " + std::to_string(k));
        const double w = (hl + hr) / 2.0;
        wl = al / (hl * w);
        wr = ar / (hr * w);
      } else {
        const double a = detail::coeff_at(op.a[static_cast<std::size_t>(d)], p, op);
        if (!(a > 0.0)) throw NonElliptic("a is not positive at node " + std::to_string(k));
        const double b = detail::coeff_at(op.b[static_cast<std::size_t>(d)], p, op);
        wl = 2.0 * a / (hl * (hl + hr));
        wr = 2.0 * a / (hr * (hl + hr));
        if (b != 0.0) {
          const bool central =
              scheme == DriftScheme::hybrid && b * hr < 2.0 * a && -b * hl < 2.0 * a;
          // Drift rows sum to zero, so the diagonal part is absorbed below.
          if (central) {
            wl -= b * hr / (hl * (hl + hr));
            wr += b * hl / (hr * (hl + hr));
          } else if (b > 0.0) {
            wr += b / hr;
            upwinded = true;
          } else {
            wl -= b / hl;
            upwinded = true;
          }
        }
      }
      node_mass *= (hl + hr) / 2.0;
      diag -= wl + wr;
      const int jl = g.nbr[k][il];
      const int jr = g.nbr[k][ir];
      if (jl >= 0) trip.emplace_back(static_cast<int>(k), jl, wl);
      if (jr >= 0) trip.emplace_back(static_cast<int>(k), jr, wr);
    }
    if (upwinded) ++upwind;
    mass[static_cast<Eigen::Index>(k)] = node_mass;
    trip.emplace_back(static_cast<int>(k), static_cast<int>(k), diag);
  }
  SparseMatrix A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  A.setFromTriplets(trip.begin(), trip.end());
  DiscreteOperator D = DiscreteOperator::from_matrix(std::move(A), grid, mass);
  D.symmetric_form = op.self_adjoint();
  D.upwind_nodes = upwind;
  for (Eigen::Index i = 0; i < D.A.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(D.A, i); it; ++it)
      if (it.col() != i && it.value() < 0.0)
        throw MonotonicityViolation("negative off-diagonal at row " + std::to_string(i));
  return D;
}

inline DiscreteOperator assemble(const OperatorSpec& op, const Grid& g,
                                 DriftScheme scheme = DriftScheme::hybrid) {
  return assemble(op, std::make_shared<const Grid>(g), scheme);
}

/// Convenience: grid and assembly on a bounded domain.
inline DiscreteOperator discretize(const OperatorSpec& op, const DomainSpec& dom, double h,
                                   int refine_level = 0,
                                   DriftScheme scheme = DriftScheme::hybrid) {
  return assemble(op, std::make_shared<const Grid>(build_grid(dom, h, op, refine_level)), scheme);
}

inline Vector apply(const DiscreteOperator& D, const Vector& u) {
  if (u.size() != D.size())
    throw SizeMismatch("vector of size " + std::to_string(u.size()) + " for operator of size " +
                       std::to_string(D.size()));
  return D.A * u;
}

/// ||A phi + lambda phi||_inf / ||phi||_inf
inline double residual(const DiscreteOperator& D, double lambda, const Vector& phi) {
  if (phi.size() != D.size()) throw SizeMismatch("eigenvector size does not match operator");
  const double norm = phi.cwiseAbs().maxCoeff();
  if (!(norm > 0.0)) throw ZeroVector("residual of the zero vector");
  return (D.A * phi + lambda * phi).cwiseAbs().maxCoeff() / norm;
}

/// Sub-grid Dirichlet restriction: nodes with keep[i] == false become boundary.
inline DiscreteOperator restrict_to(const DiscreteOperator& D, const std::vector<char>& keep) {
  if (static_cast<Eigen::Index>(keep.size()) != D.size())
    throw SizeMismatch("mask size does not match operator");
  std::vector<int> slot(keep.size(), -1);
  int m = 0;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (keep[i]) slot[i] = m++;
  std::vector<Eigen::Triplet<double>> trip;
  Vector mass(m);
  for (Eigen::Index i = 0; i < D.A.outerSize(); ++i) {
    const int si = slot[static_cast<std::size_t>(i)];
    if (si < 0) continue;
    mass[si] = D.mass[i];
    for (SparseMatrix::InnerIterator it(D.A, i); it; ++it) {
      const int sj = slot[static_cast<std::size_t>(it.col())];
      if (sj >= 0) trip.emplace_back(si, sj, it.value());
    }
  }
  SparseMatrix A(m, m);
  A.setFromTriplets(trip.begin(), trip.end());
  auto R = DiscreteOperator::from_matrix(std::move(A), nullptr, mass);
  R.symmetric_form = D.symmetric_form;
  return R;
}

/// Cyclic assembly of a 1D operator on one period [x0, x0 + period) with n
/// nodes (no boundary).
inline DiscreteOperator assemble_periodic(const OperatorSpec& op, double period, int n,
                                          double x0 = 0.0) {
  if (op.dim != 1) throw PreconditionFailed("periodic assembly is 1D");
  if (n < 3) throw PreconditionFailed("periodic grid needs at least 3 nodes");
  const double h = period / n;
  auto grid = std::make_shared<Grid>();
  grid->dim = 1;
  grid->h = h;
  std::vector<Eigen::Triplet<double>> trip;
  Vector mass = Vector::Constant(n, h);
  for (int k = 0; k < n; ++k) {
    const Point p{x0 + k * h, 0.0};
    grid->points.push_back(p);
    grid->nbr.push_back({(k + n - 1) % n, (k + 1) % n, -1, -1});
    grid->spacing.push_back({h, h, 0.0, 0.0});
    double wl, wr;
    double diag = detail::coeff_at(op.c, p, op);
    if (op.form == Form::divergence) {
      wl = op.a[0](Point{p.x - h / 2, 0.0}) / (h * h);
      wr = op.a[0](Point{p.x + h / 2, 0.0}) / (h * h);
    } else {
      const double a = detail::coeff_at(op.a[0], p, op);
      const double b = detail::coeff_at(op.b[0], p, op);
      wl = a / (h * h);
      wr = a / (h * h);
      if (std::fabs(b) * h < 2.0 * a) {
        wl -= b / (2 * h);
        wr += b / (2 * h);
      } else if (b > 0) {
        wr += b / h;
      } else {
        wl -= b / h;
      }
    }
    diag -= wl + wr;
    trip.emplace_back(k, (k + n - 1) % n, wl);
    trip.emplace_back(k, (k + 1) % n, wr);
    trip.emplace_back(k, k, diag);
  }
  SparseMatrix A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  auto D = DiscreteOperator::from_matrix(std::move(A), grid, mass);
  D.symmetric_form = op.self_adjoint();
  return D;
}

/// Coordinate-format dump: one "row col value" triple per line.
inline void write_coo(const DiscreteOperator& D, std::ostream& os) {
  char buf[96];
  for (Eigen::Index i = 0; i < D.A.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(D.A, i); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(i),
                    static_cast<long>(it.col()), it.value());
      os << buf;
    }
}

}  // namespace eigenlab

#endif  // EIGENLAB_DISCRETIZE_HPP
