#pragma once

#include "plap/estimate.hpp"
#include "plap/fields.hpp"
#include "plap/params.hpp"

namespace plap::radial {

/// Ball of radius R in dimension N. N = 1 is the symmetric interval
/// (-R, R), handled on its half [0, R].
struct BallDomain {
  int dimension = 2;
  double radius = 1.0;
};

struct SolveOptions {
  int grid_points = 101;          ///< odd, >= 3
  bool record_profiles = false;   ///< keep per-step normalized iterates
  double overflow_cap = 1e300;
  double underflow_floor = 1e-290;
};

/// Closed-form torsion profile
///   phi(r) = (p-1)/(p N^{1/(p-1)}) * (R^{p/(p-1)} - r^{p/(p-1)}).
RadialFunction torsion_closed_form(const BallDomain& dom, double p,
                                   int grid_points = 101);

/// k_p = ||phi||_inf^{1-p} = (N/R^p) (p/(p-1))^{p-1}, the torsion lower
/// bound for the first eigenvalue.
double kp(const BallDomain& dom, double p);

/// Radial inverse p-Laplacian: given f >= 0 on the grid, returns
///   u(r) = int_r^R ( int_0^t (s/t)^{N-1} f(s) ds )^{1/(p-1)} dt
/// with u(R) = 0 exactly. The cumulative inner integral uses the
/// composite trapezoid rule (prefix sums); the outer integral uses
/// composite Simpson, with a single trapezoid panel at the lower end
/// when the suffix has an odd panel count. The inner average at t = 0
/// is extended by its limit 0.
///
/// Throws std::invalid_argument if f has entries below -1e-14 (smaller
/// negative noise is clamped to zero).
RadialFunction green_apply(const RadialFunction& f, const BallDomain& dom,
                           double p);

/// Iteration seed (mu/k_p)^{1/(p-q)} (1 - (r/R)^{p/(p-1)}): the scaled,
/// normalized torsion profile, a supersolution of the sublinear problem.
RadialFunction supersolution(const BallDomain& dom, const ProblemParams& params,
                             int grid_points = 101);

/// Inverse iteration v_{n+1} = green_apply(mu * v_n^{q-1}) from the
/// supersolution, stopping when the relative sup-norm change drops below
/// params.outer_tol. Returns mu_q = mu/||v||_inf^{p-q}, the scaled-
/// quotient upper bound, the normalized eigenfunction and the trace.
///
/// The iterates decay monotonically toward ||v||_inf = (k_p/mu_q)^{1/(p-q)};
/// for mu far from k_p or p-q very small this leaves double range, which
/// is reported as a SolverError (overflow cap / underflow floor). The
/// normalized iteration below has no such restriction.
EigenpairEstimate inverse_iterate_ball(const BallDomain& dom,
                                       const ProblemParams& params,
                                       const SolveOptions& opts = {});

/// Normalized inverse iteration: w_0 = torsion profile,
/// w_{n+1} = green_apply((w_n/||w_n||_inf)^{q-1}); eigenvalue estimate
/// 1/||w_n||_inf^{p-1}. Equivalent to inverse_iterate_ball with mu = k_p
/// step for step after normalization, but the iterates stay O(1), so
/// arbitrarily small p-q gaps are fine. params.mu is ignored.
EigenpairEstimate normalized_iterate_ball(const BallDomain& dom,
                                          const ProblemParams& params,
                                          const SolveOptions& opts = {});

}  // namespace plap::radial
