#pragma once

#include <utility>
#include <vector>

#include "plap/estimate.hpp"
#include "plap/fields.hpp"
#include "plap/params.hpp"

namespace plap::fem2d {

struct NewtonOptions {
  bool picard = false;        ///< drop the rank-one Jacobian term
  double armijo_c = 1e-4;
  double min_step = 1e-12;    ///< line-search failure threshold
  double step_cap = 100.0;    ///< direction capped at step_cap*max(1,||u||inf)
};

struct NewtonReport {
  int iterations = 0;
  double final_rel_residual = 0.0;
  std::vector<int> line_search_evals;  ///< energy evaluations per step
  bool converged = false;
};

/// Regularized p-Dirichlet energy
///   E(u) = sum_K h^2 [ (1/p)(eps^2 + |grad u(c_K)|^2)^{p/2} - fbar_K ubar_K ]
/// with one-point (centroid) evaluation per element for both terms.
double energy(const GridFunction2D& u, const GridFunction2D& f, double p,
              double eps);

/// Gradient of energy() with respect to the interior nodal values (the
/// weak-form residual). Boundary entries of the result are zero.
GridFunction2D residual(const GridFunction2D& u, const GridFunction2D& f,
                        double p, double eps);

/// Damped Newton for the regularized p-Poisson problem -div((eps^2 +
/// |grad u|^2)^{(p-2)/2} grad u) = f. Converged when ||residual||_2
/// drops below inner_rel_tol times the zero-field baseline ||load(f)||_2.
/// The Jacobian is the full anisotropic linearization
///   (eps^2+|g|^2)^{(p-2)/2} (I + (p-2) g g^T/(eps^2+|g|^2)),
/// assembled sparse and factored with a deterministic direct method; a
/// Picard sweep (rank-one term dropped) is retried automatically if the
/// cubic backtracking line search fails on the full direction.
std::pair<GridFunction2D, NewtonReport> newton_solve(
    const GridFunction2D& f, const GridFunction2D& u0, double p, double eps,
    double inner_rel_tol, int max_newton_iters, const NewtonOptions& opts = {});

/// Rayleigh quotient ||grad u||_p^p / ||u||_p^p, no regularization.
/// The numerator uses the corner-gradient rule and the denominator the
/// centroid rule, which bounds the quotient of the bilinear iterate
/// from above (convexity up, Jensen down): a genuine upper estimate on
/// any mesh.
double rayleigh_quotient(const GridFunction2D& u, double p);

/// Normalized inverse iteration on the unit square: torsion solve from
/// zero, then -div((eps^2+|grad phi|^2)^{(p-2)/2} grad phi_{m+1}) =
/// (phi_m/||phi_m||_inf)^{q-1} with the Newton solver warm-started at
/// phi_m. Eigenvalue estimate 1/||phi||_inf^{p-1}; upper bound from the
/// Rayleigh quotient of the final normalized iterate. The torsion solve
/// is recorded as step 0 of the trace (no eigenvalue estimate).
EigenpairEstimate algorithm2_square(const SquareMesh& mesh,
                                    const ProblemParams& params);

}  // namespace plap::fem2d
