#include "plap/driver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "plap/errors.hpp"
#include "plap/norms.hpp"

namespace plap::driver {

namespace {

void check_gaps(double p, const std::vector<double>& gaps) {
  if (gaps.empty()) throw std::invalid_argument("study: no gaps given");
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (!(gaps[i] > 0.0)) throw std::invalid_argument("study: gaps must be positive");
    if (!(p - gaps[i] > 1.0))
      throw std::invalid_argument("study: gap leaves q = p - gap <= 1");
    if (i > 0 && !(gaps[i] < gaps[i - 1]))
      throw std::invalid_argument("study: gaps must be strictly decreasing");
  }
}

// Assemble rows, reference handling and fits from per-gap eigenvalues.
ConvergenceStudy finalize_study(const std::vector<double>& gaps,
                                const std::vector<double>& lambdas,
                                std::optional<double> reference) {
  ConvergenceStudy study;
  study.reference_is_exact = reference.has_value();
  study.reference_lambda = reference.value_or(lambdas.back());

  for (std::size_t i = 0; i < gaps.size(); ++i) {
    StudyRow row;
    row.gap = gaps[i];
    row.lambda = lambdas[i];
    row.is_reference = !study.reference_is_exact && i + 1 == gaps.size();
    if (!row.is_reference) row.error = study.reference_lambda - lambdas[i];
    study.rows.push_back(row);
  }

  study.k_estimate = 0.0;
  for (const StudyRow& row : study.rows)
    if (!row.is_reference && row.error > 0.0)
      study.k_estimate = std::max(study.k_estimate, row.error / row.gap);

  // log-log least squares, skipping the reference row and the largest
  // gap (transient regime)
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 1; i < study.rows.size(); ++i) {
    const StudyRow& row = study.rows[i];
    if (row.is_reference || !(row.error > 0.0)) continue;
    pts.emplace_back(std::log(row.gap), std::log(row.error));
  }
  if (pts.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    study.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return study;
}

}  // namespace

double mu_q_estimate(double mu, double v_sup, double p, double q) {
  if (!(v_sup > 0.0)) throw std::invalid_argument("mu_q_estimate: v_sup must be > 0");
  return mu / std::pow(v_sup, p - q);
}

double lambda_upper_estimate(const RadialFunction& v, int dimension, double p,
                             double q, double mu) {
  const double np = lp_norm(v, p, dimension);
  if (np == 0.0) throw std::invalid_argument("lambda_upper_estimate: v vanishes");
  const double nq = lp_norm(v, q, dimension);
  return mu * std::pow(nq, q) / std::pow(np, p);
}

double lambda_upper_estimate(const GridFunction2D& v, double p, double q,
                             double mu) {
  const double np = lp_norm(v, p);
  if (np == 0.0) throw std::invalid_argument("lambda_upper_estimate: v vanishes");
  const double nq = lp_norm(v, q);
  return mu * std::pow(nq, q) / std::pow(np, p);
}

EigenpairEstimate run_algorithm1(const radial::BallDomain& dom,
                                 const ProblemParams& params,
                                 const radial::SolveOptions& opts) {
  return radial::inverse_iterate_ball(dom, params, opts);
}

EigenpairEstimate run_algorithm2(const radial::BallDomain& dom,
                                 const ProblemParams& params,
                                 const radial::SolveOptions& opts) {
  return radial::normalized_iterate_ball(dom, params, opts);
}

EigenpairEstimate run_algorithm2(const SquareMesh& mesh,
                                 const ProblemParams& params) {
  return fem2d::algorithm2_square(mesh, params);
}

ConvergenceStudy q_to_p_study(const radial::BallDomain& dom, double p,
                              const std::vector<double>& gaps,
                              std::optional<double> reference,
                              const ProblemParams& base,
                              const radial::SolveOptions& opts) {
  check_gaps(p, gaps);
  std::vector<double> lambdas;
  for (double gap : gaps) {
    ProblemParams P = base;
    P.p = p;
    P.q = p - gap;
    lambdas.push_back(run_algorithm2(dom, P, opts).mu_q);
  }
  return finalize_study(gaps, lambdas, reference);
}

ConvergenceStudy q_to_p_study(const SquareMesh& mesh, double p,
                              const std::vector<double>& gaps,
                              std::optional<double> reference,
                              const ProblemParams& base) {
  check_gaps(p, gaps);
  std::vector<double> lambdas;
  for (double gap : gaps) {
    ProblemParams P = base;
    P.p = p;
    P.q = p - gap;
    lambdas.push_back(run_algorithm2(mesh, P).mu_q);
  }
  return finalize_study(gaps, lambdas, reference);
}

}  // namespace plap::driver
