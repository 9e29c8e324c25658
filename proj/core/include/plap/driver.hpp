#pragma once

#include <optional>
#include <vector>

#include "plap/estimate.hpp"
#include "plap/fem2d.hpp"
#include "plap/params.hpp"
#include "plap/radial.hpp"

namespace plap::driver {

/// Lower eigenvalue estimate mu_q = mu / v_sup^{p-q}.
double mu_q_estimate(double mu, double v_sup, double p, double q);

/// Scaled-quotient upper estimate mu ||v||_q^q / ||v||_p^p.
double lambda_upper_estimate(const RadialFunction& v, int dimension, double p,
                             double q, double mu);
double lambda_upper_estimate(const GridFunction2D& v, double p, double q,
                             double mu);

/// Algorithm 1 on a ball: inverse iteration from the torsion-derived
/// supersolution with explicit mu (closed-form k_p available).
EigenpairEstimate run_algorithm1(const radial::BallDomain& dom,
                                 const ProblemParams& params,
                                 const radial::SolveOptions& opts = {});

/// Algorithm 2 (normalized iteration), radial or square backend.
/// params.mu is ignored.
EigenpairEstimate run_algorithm2(const radial::BallDomain& dom,
                                 const ProblemParams& params,
                                 const radial::SolveOptions& opts = {});
EigenpairEstimate run_algorithm2(const SquareMesh& mesh,
                                 const ProblemParams& params);

struct StudyRow {
  double gap = 0.0;      ///< p - q
  double lambda = 0.0;   ///< computed eigenvalue estimate
  double error = 0.0;    ///< reference - lambda (unset on the reference row)
  bool is_reference = false;
};

/// q -> p convergence study: eigenvalue estimates across a decreasing
/// list of p-q gaps, errors against a reference, the fitted log-log
/// slope and the empirical constant K = max error/gap.
struct ConvergenceStudy {
  std::vector<StudyRow> rows;         ///< ordered by decreasing gap
  std::optional<double> slope;        ///< least-squares log-log slope
  double k_estimate = 0.0;
  double reference_lambda = 0.0;
  bool reference_is_exact = false;    ///< false: smallest-gap run used
};

/// Runs one normalized-iteration solve per gap (gaps must be positive
/// and strictly decreasing). With no reference the smallest-gap run
/// becomes the reference row and is excluded from errors and the fit;
/// the fit also drops the largest gap (transient regime) and needs at
/// least two remaining points, else slope is omitted.
ConvergenceStudy q_to_p_study(const radial::BallDomain& dom, double p,
                              const std::vector<double>& gaps,
                              std::optional<double> reference,
                              const ProblemParams& base = {},
                              const radial::SolveOptions& opts = {});
ConvergenceStudy q_to_p_study(const SquareMesh& mesh, double p,
                              const std::vector<double>& gaps,
                              std::optional<double> reference,
                              const ProblemParams& base = {});

}  // namespace plap::driver
