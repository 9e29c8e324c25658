#include "plap/oracle1d.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace plap::oracle1d {

namespace {

// Tanh-sinh quadrature on (0, b), b <= 1. The integrand is called as
// f(s, b - s) so endpoint-singular factors can be formed from the exact
// distance to the upper endpoint. Levels are refined until the sum is
// stable to ~1e-14 relative.
double tanh_sinh(const std::function<double(double, double)>& f, double b) {
  constexpr double kHalfPi = 1.5707963267948966;
  constexpr double kTMax = 6.0;
  const double mid = 0.5 * b;

  auto node_term = [&](double t) -> double {
    const double x = kHalfPi * std::sinh(t);
    // u = tanh(x); form 1 -/+ u without cancellation
    const double one_minus_u = 2.0 / (std::exp(2.0 * x) + 1.0);
    const double one_plus_u = 2.0 / (std::exp(-2.0 * x) + 1.0);
    const double weight = kHalfPi * std::cosh(t) * one_minus_u * one_plus_u;
    const double s = mid * one_plus_u;
    const double dist = mid * one_minus_u;
    if (s <= 0.0 || dist <= 0.0) return 0.0;
    const double v = f(s, dist) * weight;
    return std::isfinite(v) ? v : 0.0;
  };

  double h = 1.0;
  double sum = node_term(0.0);
  for (int t = 1; t * h <= kTMax; ++t) sum += node_term(t * h) + node_term(-t * h);
  double integral = mid * h * sum;

  for (int level = 1; level <= 10; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (int k = 1; k * h <= kTMax; k += 2) add += node_term(k * h) + node_term(-k * h);
    sum += add;
    const double refined = mid * h * sum;
    if (level >= 3 && std::abs(refined - integral) <= 1e-14 * std::abs(refined)) {
      return refined;
    }
    integral = refined;
  }
  return integral;
}

// 1 - s^p from the distance 1 - s, stable near s = 1.
double one_minus_pow(double one_minus_s, double p) {
  return -std::expm1(p * std::log1p(-one_minus_s));
}

// int_0^x (1 - s^p)^{-1/p} ds, 0 <= x <= 1.
double arc_integral(double p, double x) {
  if (x <= 0.0) return 0.0;
  return tanh_sinh(
      [p, x](double /*s*/, double x_minus_s) {
        const double one_minus_s = (1.0 - x) + x_minus_s;
        return std::pow(one_minus_pow(one_minus_s, p), -1.0 / p);
      },
      x);
}

}  // namespace

double pi_p(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("pi_p: p must be > 1");
  return 2.0 * std::pow(p - 1.0, 1.0 / p) * arc_integral(p, 1.0);
}

double lambda_1d(double p, const Interval& dom) {
  if (!(dom.b > dom.a)) throw std::invalid_argument("lambda_1d: need b > a");
  return std::pow(pi_p(p) / (dom.b - dom.a), p);
}

double sin_p(double p, double t) {
  if (!(p > 1.0)) throw std::invalid_argument("sin_p: p must be > 1");
  const double pip = pi_p(p);
  if (t < 0.0 || t > pip * (1.0 + 1e-12))
    throw std::invalid_argument("sin_p: t outside [0, pi_p]");
  // reflection about pi_p/2
  double tt = std::min(t, pip - t);
  if (tt <= 0.0) return 0.0;
  const double half = 0.5 * pip;
  if (tt >= half) return 1.0;

  const double scale = std::pow(p - 1.0, 1.0 / p);
  // Invert scale*arc_integral(x) = tt by safeguarded Newton; the
  // derivative scale*(1-x^p)^{-1/p} is explicit.
  double lo = 0.0, hi = 1.0;
  double x = tt / half;  // increasing map, crude seed
  for (int it = 0; it < 100; ++it) {
    const double g = scale * arc_integral(p, x) - tt;
    if (g > 0.0)
      hi = x;
    else
      lo = x;
    if (std::abs(g) < 1e-14 * half) break;
    const double deriv = scale * std::pow(one_minus_pow(1.0 - x, p), -1.0 / p);
    double next = x - g / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-16) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

SinpProfile sin_p_profile(double p, int n_samples) {
  if (n_samples < 3)
    throw std::invalid_argument("sin_p_profile: need at least 3 samples");
  SinpProfile out;
  out.pi_value = pi_p(p);
  out.t.resize(n_samples);
  out.values.resize(n_samples);
  const int last = n_samples - 1;
  for (int i = 0; i <= last; ++i) {
    out.t[i] = out.pi_value * i / last;
    // fill the rising half; mirror the rest
    if (2 * i <= last) out.values[i] = sin_p(p, out.t[i]);
  }
  for (int i = 0; i <= last; ++i)
    if (2 * i > last) out.values[i] = out.values[last - i];
  return out;
}

double eigenfunction_1d(double p, const Interval& dom, double x) {
  if (!(dom.b > dom.a)) throw std::invalid_argument("need b > a");
  const double t = pi_p(p) * (x - dom.a) / (dom.b - dom.a);
  return sin_p(p, t);
}

}  // namespace plap::oracle1d
