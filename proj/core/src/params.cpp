#include "plap/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace plap {

namespace {

[[noreturn]] void reject(const std::string& msg) {
  throw std::invalid_argument("invalid parameters: " + msg);
}

}  // namespace

ProblemParams validate_params(const ProblemParams& raw) {
  if (!std::isfinite(raw.p) || raw.p <= 1.0) reject("p must be > 1");
  if (!std::isfinite(raw.q) || raw.q <= 1.0) reject("q must be > 1");
  if (raw.q > raw.p) reject("q must be < p");
  if (raw.q == raw.p && !raw.allow_q_equal_p) reject("q must be < p");
  if (!std::isfinite(raw.mu) || raw.mu <= 0.0) reject("mu must be > 0");
  if (!std::isfinite(raw.epsilon) || raw.epsilon < 0.0)
    reject("epsilon must be >= 0");
  if (!std::isfinite(raw.outer_tol) || raw.outer_tol <= 0.0)
    reject("outer_tol must be > 0");
  if (!std::isfinite(raw.inner_rel_tol) || raw.inner_rel_tol <= 0.0)
    reject("inner_rel_tol must be > 0");
  if (raw.max_outer_iters <= 0) reject("max_outer_iters must be positive");
  if (raw.max_newton_iters <= 0) reject("max_newton_iters must be positive");
  return raw;
}

}  // namespace plap
