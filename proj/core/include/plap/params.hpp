#pragma once

namespace plap {

/// Parameters shared by every solver backend.
///
/// The sublinear exponent q must satisfy 1 < q < p: convergence of the
/// inverse iteration is proven only for q < p. Setting allow_q_equal_p
/// lets the normalized iteration run the experimental q = p case; no
/// convergence guarantee is made for it.
struct ProblemParams {
  double p = 2.0;             ///< p-Laplacian exponent, p > 1
  double q = 1.99;            ///< sublinear source exponent, 1 < q < p
  double mu = 1.0;            ///< source scale, mu > 0 (Algorithm 1 only)
  double epsilon = 0.0;       ///< flux regularization, eps >= 0 (FEM only)
  double outer_tol = 1e-9;    ///< relative sup-norm stopping tolerance
  int max_outer_iters = 500000;
  double inner_rel_tol = 1e-8;  ///< Newton relative residual tolerance
  int max_newton_iters = 60;
  bool allow_q_equal_p = false;
};

/// Checks every ProblemParams invariant and returns the validated copy.
/// Throws std::invalid_argument naming the violated constraint.
ProblemParams validate_params(const ProblemParams& raw);

}  // namespace plap
