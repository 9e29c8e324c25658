#include "plap/radial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "plap/errors.hpp"
#include "plap/norms.hpp"

namespace plap::radial {

namespace {

void check_domain(const BallDomain& dom) {
  if (dom.dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (!(dom.radius > 0.0)) throw std::invalid_argument("radius must be > 0");
}

void check_grid(int n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("grid_points must be odd and >= 3");
}

RadialFunction make_grid(const BallDomain& dom, int n) {
  check_domain(dom);
  check_grid(n);
  return RadialFunction{dom.radius, std::vector<double>(n, 0.0)};
}

struct StepResult {
  RadialFunction iterate;
  double sup = 0.0;
  double rel_change = 0.0;
};

StepResult apply_step(const RadialFunction& source, const RadialFunction& prev,
                      double prev_sup, const BallDomain& dom, double p) {
  StepResult out{green_apply(source, dom, p)};
  double diff = 0.0;
  for (int i = 0; i < out.iterate.n_points(); ++i) {
    out.sup = std::max(out.sup, std::abs(out.iterate.values[i]));
    diff = std::max(diff, std::abs(out.iterate.values[i] - prev.values[i]));
  }
  out.rel_change = diff / prev_sup;
  return out;
}

RadialFunction normalized(const RadialFunction& v, double sup) {
  RadialFunction u = v;
  for (double& x : u.values) x /= sup;
  return u;
}

void guard_range(double sup, const SolveOptions& opts) {
  if (!std::isfinite(sup) || sup > opts.overflow_cap)
    throw SolverError(
        "iterate sup-norm exceeded the overflow cap; the seed amplitude "
        "(mu/k_p)^{1/(p-q)} explodes for mu far from k_p with small p-q. "
        "Use mu = k_p or the normalized iteration.");
  if (sup < opts.underflow_floor)
    throw SolverError(
        "iterate sup-norm fell below the underflow floor; for this p-q gap "
        "the unnormalized iterates leave double range. Use the normalized "
        "iteration (algorithm 2).");
}

// Upper estimate via the normalized profile: mu ||v||_q^q / ||v||_p^p
// = mu_q ||u||_q^q / ||u||_p^p, safe for iterates of any magnitude.
double upper_estimate(const RadialFunction& u, int dimension, double p,
                      double q, double mu_q) {
  const double nq = lp_norm(u, q, dimension);
  const double np = lp_norm(u, p, dimension);
  if (np == 0.0) throw SolverError("upper estimate: zero L^p norm");
  return mu_q * std::pow(nq, q) / std::pow(np, p);
}

}  // namespace

RadialFunction torsion_closed_form(const BallDomain& dom, double p,
                                   int grid_points) {
  if (!(p > 1.0)) throw std::invalid_argument("p must be > 1");
  RadialFunction phi = make_grid(dom, grid_points);
  const double e = p / (p - 1.0);
  const double c = (p - 1.0) / (p * std::pow(dom.dimension, 1.0 / (p - 1.0)));
  const double re = std::pow(dom.radius, e);
  for (int i = 0; i < grid_points; ++i)
    phi.values[i] = c * (re - std::pow(phi.r(i), e));
  phi.values.back() = 0.0;
  return phi;
}

double kp(const BallDomain& dom, double p) {
  check_domain(dom);
  if (!(p > 1.0)) throw std::invalid_argument("p must be > 1");
  return dom.dimension / std::pow(dom.radius, p) *
         std::pow(p / (p - 1.0), p - 1.0);
}

RadialFunction green_apply(const RadialFunction& f, const BallDomain& dom,
                           double p) {
  check_domain(dom);
  const int n = f.n_points();
  check_grid(n);
  if (f.radius != dom.radius)
    throw std::invalid_argument("green_apply: grid radius != domain radius");
  if (!(p > 1.0)) throw std::invalid_argument("p must be > 1");

  const int N = dom.dimension;
  const double h = f.spacing();

  // s^{N-1} f(s), with negative noise below 1e-14 rejected.
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) {
    double v = f.values[i];
    if (v < 0.0) {
      if (v < -1e-14)
        throw std::invalid_argument(
            "green_apply: source has negative entries (fractional powers "
            "undefined)");
      v = 0.0;
    }
    g[i] = (N == 1 ? 1.0 : std::pow(f.r(i), N - 1)) * v;
  }

  // Cumulative trapezoid prefix I(t_j) = int_0^{t_j} s^{N-1} f ds, then
  // the radial average A = I/t^{N-1} (limit 0 at t = 0) raised to the
  // inverse-flux power.
  std::vector<double> outer(n);
  const double inv_pm1 = 1.0 / (p - 1.0);
  double prefix = 0.0;
  outer[0] = 0.0;
  for (int j = 1; j < n; ++j) {
    prefix += 0.5 * h * (g[j - 1] + g[j]);
    const double avg =
        N == 1 ? prefix : prefix / std::pow(f.r(j), N - 1);
    outer[j] = std::pow(avg, inv_pm1);
  }

  // Suffix integrals int_{r_i}^R: composite Simpson, one trapezoid panel
  // adjacent to r_i when the remaining panel count is odd.
  RadialFunction u = make_grid(dom, n);
  u.values[n - 1] = 0.0;
  for (int i = n - 2; i >= 0; --i) {
    if ((n - 1 - i) % 2 == 0)
      u.values[i] = u.values[i + 2] +
                    h / 3.0 * (outer[i] + 4.0 * outer[i + 1] + outer[i + 2]);
    else
      u.values[i] = u.values[i + 1] + 0.5 * h * (outer[i] + outer[i + 1]);
  }
  return u;
}

RadialFunction supersolution(const BallDomain& dom, const ProblemParams& params,
                             int grid_points) {
  const ProblemParams P = validate_params(params);
  check_domain(dom);
  check_grid(grid_points);
  const double amplitude =
      std::pow(P.mu / kp(dom, P.p), 1.0 / (P.p - P.q));
  const double e = P.p / (P.p - 1.0);
  RadialFunction v = make_grid(dom, grid_points);
  for (int i = 0; i < grid_points; ++i)
    v.values[i] = amplitude * (1.0 - std::pow(v.r(i) / dom.radius, e));
  v.values.back() = 0.0;
  return v;
}

EigenpairEstimate inverse_iterate_ball(const BallDomain& dom,
                                       const ProblemParams& params,
                                       const SolveOptions& opts) {
  const ProblemParams P = validate_params(params);
  if (P.q == P.p)
    throw std::invalid_argument(
        "inverse_iterate_ball: q = p is not supported (unnormalized iterates "
        "have no fixed scale)");
  RadialFunction v = supersolution(dom, P, opts.grid_points);
  double sup = sup_norm(v);
  guard_range(sup, opts);

  IterationTrace trace;
  if (opts.record_profiles)
    trace.normalized_profiles.push_back(normalized(v, sup).values);

  RadialFunction source = make_grid(dom, opts.grid_points);
  for (int iter = 0; iter < P.max_outer_iters; ++iter) {
    for (int i = 0; i < opts.grid_points; ++i)
      source.values[i] = P.mu * std::pow(v.values[i], P.q - 1.0);
    StepResult step = apply_step(source, v, sup, dom, P.p);
    guard_range(step.sup, opts);
    const double mu_q = P.mu / std::pow(step.sup, P.p - P.q);
    trace.steps.push_back({step.sup, step.rel_change, mu_q, 0});
    v = std::move(step.iterate);
    sup = step.sup;
    if (opts.record_profiles)
      trace.normalized_profiles.push_back(normalized(v, sup).values);
    if (step.rel_change < P.outer_tol) {
      trace.converged = true;
      break;
    }
  }
  if (!trace.converged)
    throw SolverError("inverse iteration: no convergence within " +
                      std::to_string(P.max_outer_iters) + " iterations");

  RadialFunction u = normalized(v, sup);
  const double mu_q = P.mu / std::pow(sup, P.p - P.q);
  const double upper = upper_estimate(u, dom.dimension, P.p, P.q, mu_q);
  return EigenpairEstimate{mu_q, upper, std::move(u), std::move(trace)};
}

EigenpairEstimate normalized_iterate_ball(const BallDomain& dom,
                                          const ProblemParams& params,
                                          const SolveOptions& opts) {
  ProblemParams P = params;
  P.mu = 1.0;  // unused by the normalized iteration
  P = validate_params(P);
  RadialFunction w = torsion_closed_form(dom, P.p, opts.grid_points);
  double sup = sup_norm(w);

  IterationTrace trace;
  if (opts.record_profiles)
    trace.normalized_profiles.push_back(normalized(w, sup).values);

  RadialFunction source = make_grid(dom, opts.grid_points);
  for (int iter = 0; iter < P.max_outer_iters; ++iter) {
    for (int i = 0; i < opts.grid_points; ++i)
      source.values[i] = std::pow(w.values[i] / sup, P.q - 1.0);
    StepResult step = apply_step(source, w, sup, dom, P.p);
    if (!std::isfinite(step.sup) || step.sup == 0.0)
      throw SolverError("normalized iteration: degenerate iterate");
    const double lambda = std::pow(step.sup, 1.0 - P.p);
    trace.steps.push_back({step.sup, step.rel_change, lambda, 0});
    w = std::move(step.iterate);
    sup = step.sup;
    if (opts.record_profiles)
      trace.normalized_profiles.push_back(normalized(w, sup).values);
    if (step.rel_change < P.outer_tol) {
      trace.converged = true;
      break;
    }
  }
  if (!trace.converged)
    throw SolverError("normalized iteration: no convergence within " +
                      std::to_string(P.max_outer_iters) + " iterations");

  RadialFunction u = normalized(w, sup);
  const double lambda = std::pow(sup, 1.0 - P.p);
  const double upper = upper_estimate(u, dom.dimension, P.p, P.q, lambda);
  return EigenpairEstimate{lambda, upper, std::move(u), std::move(trace)};
}

}  // namespace plap::radial
