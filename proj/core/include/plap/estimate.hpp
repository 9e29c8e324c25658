#pragma once

#include <variant>
#include <vector>

#include "plap/fields.hpp"

namespace plap {

/// One outer-iteration record.
struct IterationStep {
  double sup_norm = 0.0;         ///< ||phi_m||_inf after the step
  double rel_change = 0.0;       ///< ||phi_m - phi_{m-1}||_inf / ||phi_{m-1}||_inf
  double eigenvalue_estimate = 0.0;
  int newton_iters = 0;          ///< inner solver iterations (FEM backend)
};

struct IterationTrace {
  std::vector<IterationStep> steps;
  /// Normalized iterate snapshots, one per step, recorded only when the
  /// solver is asked to (used by the algorithm-equivalence checks).
  std::vector<std::vector<double>> normalized_profiles;
  bool converged = false;

  int iterations() const { return static_cast<int>(steps.size()); }
};

using Eigenfunction = std::variant<RadialFunction, GridFunction2D>;

/// Converged two-sided eigenvalue bracket with its normalized
/// eigenfunction: mu_q <= lambda_p <= lambda_upper, ||u||_inf = 1.
struct EigenpairEstimate {
  double mu_q = 0.0;
  double lambda_upper = 0.0;
  Eigenfunction eigenfunction;
  IterationTrace trace;
};

}  // namespace plap
