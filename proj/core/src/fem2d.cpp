#include "plap/fem2d.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"
#include "plap/norms.hpp"

namespace plap::fem2d {

namespace {

// Bilinear shape-function gradients at the cell centroid, times 2h:
// local corner order (0,0),(1,0),(1,1),(0,1).
constexpr double kDx[4] = {-1.0, 1.0, 1.0, -1.0};
constexpr double kDy[4] = {-1.0, -1.0, 1.0, 1.0};

struct CellState {
  int node[4];
  double gx, gy;   // centroid gradient
  double s;        // eps^2 + |g|^2
  double ubar;     // centroid value
};

template <typename Fn>
void for_each_cell(const GridFunction2D& u, double eps, Fn&& fn) {
  const int n = u.mesh.n_cells;
  const int stride = u.mesh.nodes_per_side();
  const double inv2h = 0.5 * n;
  for (int cy = 0; cy < n; ++cy) {
    for (int cx = 0; cx < n; ++cx) {
      CellState c;
      c.node[0] = cy * stride + cx;
      c.node[1] = c.node[0] + 1;
      c.node[2] = c.node[0] + stride + 1;
      c.node[3] = c.node[0] + stride;
      const double u0 = u.values[c.node[0]], u1 = u.values[c.node[1]];
      const double u2 = u.values[c.node[2]], u3 = u.values[c.node[3]];
      c.gx = (u1 + u2 - u0 - u3) * inv2h;
      c.gy = (u2 + u3 - u0 - u1) * inv2h;
      c.s = eps * eps + c.gx * c.gx + c.gy * c.gy;
      c.ubar = 0.25 * (u0 + u1 + u2 + u3);
      fn(c, cx, cy);
    }
  }
}

void check_compatible(const GridFunction2D& a, const GridFunction2D& b) {
  if (a.mesh.n_cells != b.mesh.n_cells)
    throw std::invalid_argument("grid functions live on different meshes");
}

void check_inputs(const GridFunction2D& u, double p, double eps) {
  if (!(p > 1.0)) throw std::invalid_argument("p must be > 1");
  if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
  if (u.mesh.n_cells < 2)
    throw std::invalid_argument("mesh needs at least 2 cells per side");
  if (static_cast<int>(u.values.size()) != u.mesh.n_nodes())
    throw std::invalid_argument("nodal array size does not match mesh");
}

// (.)^{(p-2)/2} with a floor so p < 2 stays finite at a zero gradient.
double flux_weight(double s, double p) {
  const double e = 0.5 * (p - 2.0);
  if (s <= 0.0) {
    if (e == 0.0) return 1.0;
    return e > 0.0 ? 0.0 : std::pow(1e-30, e);
  }
  return std::pow(s, e);
}

GridFunction2D load_vector(const GridFunction2D& f) {
  GridFunction2D b(f.mesh);
  const double quarter_cell =
      0.25 * f.mesh.spacing() * f.mesh.spacing();
  for_each_cell(f, 0.0, [&](const CellState& c, int, int) {
    const double w = quarter_cell * c.ubar;  // h^2 * fbar / 4
    for (int k = 0; k < 4; ++k) b.values[c.node[k]] += w;
  });
  // only interior entries act on unknowns
  const int n = f.mesh.n_cells;
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix)
      if (f.on_boundary(ix, iy)) b.values[f.index(ix, iy)] = 0.0;
  return b;
}

double l2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

int interior_dof(const SquareMesh& mesh, int ix, int iy) {
  return (iy - 1) * (mesh.n_cells - 1) + (ix - 1);
}

}  // namespace

double energy(const GridFunction2D& u, const GridFunction2D& f, double p,
              double eps) {
  check_inputs(u, p, eps);
  check_compatible(u, f);
  const double cell = u.mesh.spacing() * u.mesh.spacing();
  double e = 0.0;
  for_each_cell(u, eps, [&](const CellState& c, int, int) {
    const double fbar = 0.25 * (f.values[c.node[0]] + f.values[c.node[1]] +
                                f.values[c.node[2]] + f.values[c.node[3]]);
    e += cell * (std::pow(c.s, 0.5 * p) / p - fbar * c.ubar);
  });
  return e;
}

GridFunction2D residual(const GridFunction2D& u, const GridFunction2D& f,
                        double p, double eps) {
  check_inputs(u, p, eps);
  check_compatible(u, f);
  const GridFunction2D b = load_vector(f);
  GridFunction2D r(u.mesh);
  const double half_h = 0.5 * u.mesh.spacing();  // h^2 / (2h)
  for_each_cell(u, eps, [&](const CellState& c, int, int) {
    const double w = flux_weight(c.s, p);
    const double fx = w * c.gx * half_h, fy = w * c.gy * half_h;
    for (int k = 0; k < 4; ++k)
      r.values[c.node[k]] += fx * kDx[k] + fy * kDy[k];
  });
  const int n = u.mesh.n_cells;
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix) {
      const int id = u.index(ix, iy);
      if (u.on_boundary(ix, iy))
        r.values[id] = 0.0;
      else
        r.values[id] -= b.values[id];
    }
  return r;
}

namespace {

// Sparse Jacobian over interior unknowns; full anisotropic linearization
// unless picard drops the rank-one term.
Eigen::SparseMatrix<double> assemble_jacobian(const GridFunction2D& u, double p,
                                              double eps, bool picard) {
  const SquareMesh mesh = u.mesh;
  const int n = mesh.n_cells;
  const int dofs = mesh.n_interior();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(n) * n * 16);
  const double quarter = 0.25;  // h^2 / (2h)^2
  for_each_cell(u, eps, [&](const CellState& c, int cx, int cy) {
    const double a = flux_weight(c.s, p);
    const double rank1 =
        picard ? 0.0
               : (p - 2.0) * (c.s > 0.0 ? a / c.s
                                        : flux_weight(c.s, p - 2.0));
    const int gx4[4] = {cx, cx + 1, cx + 1, cx};
    const int gy4[4] = {cy, cy, cy + 1, cy + 1};
    for (int i = 0; i < 4; ++i) {
      if (gx4[i] == 0 || gx4[i] == n || gy4[i] == 0 || gy4[i] == n) continue;
      const int di = interior_dof(mesh, gx4[i], gy4[i]);
      const double gdi = c.gx * kDx[i] + c.gy * kDy[i];
      for (int j = 0; j < 4; ++j) {
        if (gx4[j] == 0 || gx4[j] == n || gy4[j] == 0 || gy4[j] == n) continue;
        const int dj = interior_dof(mesh, gx4[j], gy4[j]);
        const double gdj = c.gx * kDx[j] + c.gy * kDy[j];
        const double val =
            quarter * (a * (kDx[i] * kDx[j] + kDy[i] * kDy[j]) +
                       rank1 * gdi * gdj);
        triplets.emplace_back(di, dj, val);
      }
    }
  });
  Eigen::SparseMatrix<double> J(dofs, dofs);
  J.setFromTriplets(triplets.begin(), triplets.end());
  return J;
}

struct LineSearchResult {
  double alpha = 0.0;
  int evals = 0;
  bool ok = false;
};

// Armijo backtracking with quadratic/cubic interpolation on the energy.
LineSearchResult line_search(const GridFunction2D& u, const GridFunction2D& f,
                             double p, double eps,
                             const std::vector<double>& dir, double dir_dot_grad,
                             const NewtonOptions& opts) {
  LineSearchResult res;
  const double e0 = energy(u, f, p, eps);
  GridFunction2D trial(u.mesh);

  auto eval = [&](double a) {
    for (std::size_t i = 0; i < trial.values.size(); ++i)
      trial.values[i] = u.values[i] + a * dir[i];
    ++res.evals;
    return energy(trial, f, p, eps);
  };

  double a_cur = 1.0;
  double e_cur = eval(a_cur);
  double a_prev = 0.0, e_prev = e0;
  while (res.evals < 60) {
    if (std::isfinite(e_cur) &&
        e_cur <= e0 + opts.armijo_c * a_cur * dir_dot_grad) {
      res.alpha = a_cur;
      res.ok = true;
      return res;
    }
    double a_next;
    if (a_prev == 0.0 || !std::isfinite(e_cur)) {
      // quadratic model through (0,e0,slope) and (a_cur,e_cur)
      const double denom = 2.0 * (e_cur - e0 - dir_dot_grad * a_cur);
      a_next = std::isfinite(denom) && denom > 0.0
                   ? -dir_dot_grad * a_cur * a_cur / denom
                   : 0.5 * a_cur;
    } else {
      // cubic model through (0,e0,slope), (a_prev,e_prev), (a_cur,e_cur)
      const double r1 = e_cur - e0 - dir_dot_grad * a_cur;
      const double r2 = e_prev - e0 - dir_dot_grad * a_prev;
      const double det = a_prev * a_prev * a_cur * a_cur * (a_cur - a_prev);
      const double ca = (a_prev * a_prev * r1 - a_cur * a_cur * r2) / det;
      const double cb =
          (-a_prev * a_prev * a_prev * r1 + a_cur * a_cur * a_cur * r2) / det;
      const double disc = cb * cb - 3.0 * ca * dir_dot_grad;
      a_next = (std::isfinite(disc) && disc >= 0.0 && ca != 0.0)
                   ? (-cb + std::sqrt(disc)) / (3.0 * ca)
                   : 0.5 * a_cur;
    }
    if (!(a_next > 0.01 * a_cur)) a_next = 0.01 * a_cur;
    if (!(a_next < 0.5 * a_cur)) a_next = 0.5 * a_cur;
    a_prev = a_cur;
    e_prev = e_cur;
    a_cur = a_next;
    if (a_cur < opts.min_step) return res;
    e_cur = eval(a_cur);
  }
  return res;
}

}  // namespace

std::pair<GridFunction2D, NewtonReport> newton_solve(
    const GridFunction2D& f, const GridFunction2D& u0, double p, double eps,
    double inner_rel_tol, int max_newton_iters, const NewtonOptions& opts) {
  check_inputs(u0, p, eps);
  check_compatible(u0, f);
  if (!(inner_rel_tol > 0.0))
    throw std::invalid_argument("inner_rel_tol must be > 0");
  const SquareMesh mesh = u0.mesh;
  const int n = mesh.n_cells;
  const int dofs = mesh.n_interior();

  GridFunction2D u = u0;
  for (int iy = 0; iy <= n; ++iy)
    for (int ix = 0; ix <= n; ++ix)
      if (u.on_boundary(ix, iy)) u.at(ix, iy) = 0.0;

  const double baseline = l2(load_vector(f).values);
  const double target = inner_rel_tol * (baseline > 0.0 ? baseline : 1.0);

  NewtonReport report;
  GridFunction2D r = residual(u, f, p, eps);
  double rnorm = l2(r.values);

  Eigen::VectorXd rhs(dofs), d(dofs);
  std::vector<double> dir(u.values.size(), 0.0);

  for (int it = 0; it < max_newton_iters && rnorm > target; ++it) {
    bool accepted = false;
    for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
      const bool picard = opts.picard || attempt == 1;
      Eigen::SparseMatrix<double> J = assemble_jacobian(u, p, eps, picard);
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(J);
      if (solver.info() != Eigen::Success) continue;
      for (int iy = 1; iy < n; ++iy)
        for (int ix = 1; ix < n; ++ix)
          rhs[interior_dof(mesh, ix, iy)] = -r.at(ix, iy);
      d = solver.solve(rhs);
      if (solver.info() != Eigen::Success || !d.allFinite()) continue;

      std::fill(dir.begin(), dir.end(), 0.0);
      double dsup = 0.0, slope = 0.0;
      for (int iy = 1; iy < n; ++iy)
        for (int ix = 1; ix < n; ++ix) {
          const double val = d[interior_dof(mesh, ix, iy)];
          dir[u.index(ix, iy)] = val;
          dsup = std::max(dsup, std::abs(val));
          slope += val * r.at(ix, iy);
        }
      if (slope >= 0.0) continue;  // not a descent direction

      // cap absurdly long directions (near-degenerate Jacobian at a
      // flat state) so the backtracking window can reach a useful scale
      const double cap = opts.step_cap * std::max(1.0, sup_norm(u));
      if (dsup > cap) {
        const double shrink = cap / dsup;
        for (double& x : dir) x *= shrink;
        slope *= shrink;
      }

      // full step first: near the solution the energy differences sit at
      // roundoff while the residual norm is still meaningful
      GridFunction2D trial = u;
      for (std::size_t k = 0; k < trial.values.size(); ++k)
        trial.values[k] += dir[k];
      GridFunction2D r_trial = residual(trial, f, p, eps);
      const double rn_trial = l2(r_trial.values);
      if (rn_trial <= 0.9 * rnorm) {
        u = std::move(trial);
        r = std::move(r_trial);
        rnorm = rn_trial;
        report.line_search_evals.push_back(1);
        accepted = true;
        break;
      }

      LineSearchResult ls = line_search(u, f, p, eps, dir, slope, opts);
      report.line_search_evals.push_back(ls.evals + 1);
      if (!ls.ok) continue;
      for (std::size_t k = 0; k < u.values.size(); ++k)
        u.values[k] += ls.alpha * dir[k];
      r = residual(u, f, p, eps);
      rnorm = l2(r.values);
      accepted = true;
    }
    if (!accepted)
      throw SolverError(
          "newton_solve: line search failed (step below minimum) with both "
          "full and Picard directions");
    ++report.iterations;
  }

  report.final_rel_residual = rnorm / (baseline > 0.0 ? baseline : 1.0);
  report.converged = rnorm <= target;
  if (!report.converged)
    throw SolverError("newton_solve: no convergence in " +
                      std::to_string(max_newton_iters) + " iterations");
  return {std::move(u), std::move(report)};
}

double rayleigh_quotient(const GridFunction2D& u, double p) {
  check_inputs(u, p, 0.0);
  const double cell = u.mesh.spacing() * u.mesh.spacing();
  const double inv_h = static_cast<double>(u.mesh.n_cells);
  double num = 0.0, den = 0.0;
  for_each_cell(u, 0.0, [&](const CellState& c, int, int) {
    // corner-gradient rule: the cell gradient is a convex combination
    // of the four corner gradients (edge slopes), so this dominates the
    // exact integral of |grad u|^p; the centroid denominator
    // under-integrates |u|^p by Jensen.
    const double u0 = u.values[c.node[0]], u1 = u.values[c.node[1]];
    const double u2 = u.values[c.node[2]], u3 = u.values[c.node[3]];
    const double gxb = (u1 - u0) * inv_h, gxt = (u2 - u3) * inv_h;
    const double gyl = (u3 - u0) * inv_h, gyr = (u2 - u1) * inv_h;
    num += cell * 0.25 *
           (std::pow(gxb * gxb + gyl * gyl, 0.5 * p) +
            std::pow(gxb * gxb + gyr * gyr, 0.5 * p) +
            std::pow(gxt * gxt + gyr * gyr, 0.5 * p) +
            std::pow(gxt * gxt + gyl * gyl, 0.5 * p));
    den += cell * std::pow(std::abs(c.ubar), p);
  });
  if (den == 0.0) throw SolverError("rayleigh_quotient: u vanishes");
  return num / den;
}

EigenpairEstimate algorithm2_square(const SquareMesh& mesh,
                                    const ProblemParams& params) {
  ProblemParams P = params;
  P.mu = 1.0;  // normalized iteration has no mu
  P = validate_params(P);
  if (mesh.n_cells < 2)
    throw std::invalid_argument("mesh needs at least 2 cells per side");

  GridFunction2D ones(mesh);
  for (double& v : ones.values) v = 1.0;
  const GridFunction2D zero(mesh);

  auto [phi, torsion_report] =
      newton_solve(ones, zero, P.p, P.epsilon, P.inner_rel_tol,
                   P.max_newton_iters);
  double sup = sup_norm(phi);
  if (!(sup > 0.0)) throw SolverError("torsion solve returned zero field");

  IterationTrace trace;
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  trace.steps.push_back({sup, kNaN, kNaN, torsion_report.iterations});

  GridFunction2D source(mesh);
  for (int iter = 0; iter < P.max_outer_iters; ++iter) {
    for (std::size_t k = 0; k < source.values.size(); ++k)
      source.values[k] = std::pow(std::max(phi.values[k], 0.0) / sup, P.q - 1.0);
    auto [next, report] = newton_solve(source, phi, P.p, P.epsilon,
                                       P.inner_rel_tol, P.max_newton_iters);
    double next_sup = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < next.values.size(); ++k) {
      next_sup = std::max(next_sup, std::abs(next.values[k]));
      diff = std::max(diff, std::abs(next.values[k] - phi.values[k]));
    }
    if (!(next_sup > 0.0) || !std::isfinite(next_sup))
      throw SolverError("inverse iteration: degenerate iterate");
    const double rel = diff / sup;
    const double lambda = std::pow(next_sup, 1.0 - P.p);
    trace.steps.push_back({next_sup, rel, lambda, report.iterations});
    phi = std::move(next);
    sup = next_sup;
    if (rel < P.outer_tol) {
      trace.converged = true;
      break;
    }
  }
  if (!trace.converged)
    throw SolverError("inverse iteration: no convergence within " +
                      std::to_string(P.max_outer_iters) + " outer steps");

  GridFunction2D u = phi;
  for (double& v : u.values) v /= sup;
  const double lambda = std::pow(sup, 1.0 - P.p);
  const double upper = rayleigh_quotient(u, P.p);
  return EigenpairEstimate{lambda, upper, std::move(u), std::move(trace)};
}

}  // namespace plap::fem2d
