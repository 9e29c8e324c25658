#pragma once

#include <vector>

namespace plap::oracle1d {

/// Open interval (a, b).
struct Interval {
  double a = 0.0;
  double b = 1.0;
};

/// Generalized circle constant
///   pi_p = 2 (p-1)^{1/p} int_0^1 (1 - s^p)^{-1/p} ds.
/// The integrand's endpoint singularity at s = 1 is handled by tanh-sinh
/// (double-exponential) quadrature; pi_2 = pi. The Beta-function identity
/// 2 pi (p-1)^{1/p} / (p sin(pi/p)) serves as a cross-check in the tests,
/// never as the definition here.
double pi_p(double p);

/// First Dirichlet eigenvalue of the one-dimensional p-Laplacian on
/// (a, b): lambda = (pi_p / (b-a))^p.
double lambda_1d(double p, const Interval& dom);

/// sin_p(t) for t in [0, pi_p]: on [0, pi_p/2] the inverse of
///   x |-> (p-1)^{1/p} int_0^x (1 - s^p)^{-1/p} ds,
/// found by bracketed root solving; extended to [pi_p/2, pi_p] by
/// reflection. Increasing on [0, pi_p/2], maximum sin_p(pi_p/2) = 1.
double sin_p(double p, double t);

struct SinpProfile {
  double pi_value = 0.0;        ///< pi_p
  std::vector<double> t;        ///< uniform samples on [0, pi_p]
  std::vector<double> values;   ///< sin_p(t)
};

SinpProfile sin_p_profile(double p, int n_samples);

/// First eigenfunction on (a, b), sup-normalized:
/// e(x) = sin_p(pi_p (x-a)/(b-a)).
double eigenfunction_1d(double p, const Interval& dom, double x);

}  // namespace plap::oracle1d
