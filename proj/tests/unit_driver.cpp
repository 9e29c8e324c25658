#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "plap/driver.hpp"
#include "plap/norms.hpp"
#include "plap/oracle1d.hpp"

using namespace plap;
using namespace plap::driver;

TEST_CASE("mu_q_estimate") {
  CHECK(mu_q_estimate(4.0, 1.0, 2.0, 1.99) == doctest::Approx(4.0));
  CHECK(mu_q_estimate(4.0, 0.5, 2.0, 1.99) ==
        doctest::Approx(4.0278222).epsilon(1e-6));
  CHECK_THROWS_AS(mu_q_estimate(4.0, 0.0, 2.0, 1.99), std::invalid_argument);
}

TEST_CASE("lambda_upper_estimate collapses to mu at q = p") {
  std::mt19937 rng(3);
  RadialFunction v{1.0, std::vector<double>(41)};
  for (double& x : v.values) x = std::generate_canonical<double, 53>(rng);
  v.values.back() = 0.0;
  CHECK(lambda_upper_estimate(v, 2, 2.5, 2.5, 7.0) ==
        doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("lambda_upper_estimate homogeneity") {
  std::mt19937 rng(5);
  RadialFunction v{1.0, std::vector<double>(41)};
  for (double& x : v.values) x = std::generate_canonical<double, 53>(rng);
  const double p = 3.0, q = 2.8, mu = 2.0;
  const double base = lambda_upper_estimate(v, 3, p, q, mu);
  for (double c : {0.5, 2.0, 10.0}) {
    RadialFunction w = v;
    for (double& x : w.values) x *= c;
    CHECK(lambda_upper_estimate(w, 3, p, q, mu) ==
          doctest::Approx(base * std::pow(c, q - p)).epsilon(1e-10));
  }
}

TEST_CASE("algorithm 1 reproduces ball eigenvalues") {
  {
    radial::BallDomain disk{2, 1.0};
    ProblemParams P;
    P.p = 1.5;
    P.q = 1.49;
    P.mu = radial::kp(disk, P.p);
    auto est = run_algorithm1(disk, P);
    CHECK(std::abs(est.mu_q - 4.0053) < 0.02);
  }
  {
    radial::BallDomain ball{4, 1.0};
    ProblemParams P;
    P.p = 2.0;
    P.q = 1.99;
    P.mu = radial::kp(ball, P.p);
    auto est = run_algorithm1(ball, P);
    CHECK(std::abs(est.mu_q - 14.5735) < 5e-3);
  }
}

TEST_CASE("interval backend approaches the exact 1D eigenvalue") {
  // unit-length interval: N = 1, R = 1/2
  radial::BallDomain line{1, 0.5};
  ProblemParams P;
  P.p = 2.0;
  P.q = 2.0 - 1e-4;
  auto est = run_algorithm2(line, P);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(est.mu_q - pi2) < 1e-3 * pi2);
  CHECK(est.mu_q ==
        doctest::Approx(oracle1d::lambda_1d(2.0, {-0.5, 0.5})).epsilon(1e-3));
}

TEST_CASE("normalized radial iteration equals algorithm 1 with mu = k_p") {
  radial::BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 2.5;
  P.q = 2.49;
  P.outer_tol = 1e-12;
  P.mu = radial::kp(disk, P.p);
  radial::SolveOptions opts;
  opts.record_profiles = true;
  auto a1 = run_algorithm1(disk, P, opts);
  auto a2 = run_algorithm2(disk, P, opts);
  CHECK(a1.mu_q == doctest::Approx(a2.mu_q).epsilon(1e-10));

  const auto& s1 = a1.trace.normalized_profiles;
  const auto& s2 = a2.trace.normalized_profiles;
  const std::size_t steps = std::min(s1.size(), s2.size());
  REQUIRE(steps > 5);
  for (std::size_t m = 0; m < steps; ++m) {
    double diff = 0.0;
    for (std::size_t i = 0; i < s1[m].size(); ++i)
      diff = std::max(diff, std::abs(s1[m][i] - s2[m][i]));
    CAPTURE(m);
    CHECK(diff <= 1e-10);
  }
}

TEST_CASE("identity -Delta_p u_q = mu_q u_q^{q-1} at the fixed point") {
  radial::BallDomain ball{3, 1.0};
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.99;
  P.mu = 2.5 * radial::kp(ball, P.p);  // arbitrary mu, same normalized pair
  auto est = run_algorithm1(ball, P);
  auto u = std::get<RadialFunction>(est.eigenfunction);
  RadialFunction source = u;
  for (double& x : source.values) x = est.mu_q * std::pow(x, P.q - 1.0);
  auto back = radial::green_apply(source, ball, P.p);
  double diff = 0.0;
  for (int i = 0; i < u.n_points(); ++i)
    diff = std::max(diff, std::abs(back.values[i] - u.values[i]));
  CHECK(diff < 10.0 * P.outer_tol);
}

TEST_CASE("q -> p study on the ball: linear error law") {
  radial::BallDomain ball{3, 1.0};
  ConvergenceStudy study = q_to_p_study(
      ball, 1.5, {1e-1, 1e-2, 1e-3, 1e-4}, std::nullopt);
  REQUIRE(study.rows.size() == 4);
  CHECK(study.rows.back().is_reference);
  CHECK_FALSE(study.reference_is_exact);
  for (std::size_t i = 0; i + 2 < study.rows.size(); ++i)
    CHECK(study.rows[i].error > study.rows[i + 1].error);
  for (const StudyRow& row : study.rows)
    if (!row.is_reference) CHECK(row.error >= 0.0);
  REQUIRE(study.slope.has_value());
  CHECK(*study.slope > 0.9);
  CHECK(*study.slope < 1.1);
  CHECK(study.k_estimate > 0.0);
}

TEST_CASE("q -> p study with an exact interval reference: stable K") {
  radial::BallDomain line{1, 0.5};
  const double exact = oracle1d::lambda_1d(2.0, {-0.5, 0.5});
  // gaps stay above the grid-bias floor so the exact-reference errors
  // are resolved; 1001 points push that floor to ~2e-6
  radial::SolveOptions opts;
  opts.grid_points = 1001;
  ConvergenceStudy study =
      q_to_p_study(line, 2.0, {1e-1, 1e-2, 1e-3, 1e-4}, exact, {}, opts);
  CHECK(study.reference_is_exact);
  REQUIRE(study.rows.size() == 4);
  for (std::size_t i = 0; i + 1 < study.rows.size(); ++i)
    CHECK(study.rows[i].error > study.rows[i + 1].error);
  const double k3 = study.rows[2].error / study.rows[2].gap;
  const double k4 = study.rows[3].error / study.rows[3].gap;
  CHECK(k3 / k4 > 0.8);
  CHECK(k3 / k4 < 1.25);
}

TEST_CASE("study input validation") {
  radial::BallDomain ball{3, 1.0};
  CHECK_THROWS_AS(q_to_p_study(ball, 1.5, {}, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(q_to_p_study(ball, 1.5, {1e-2, 1e-2}, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(q_to_p_study(ball, 1.5, {0.9}, std::nullopt),
                  std::invalid_argument);  // q = 0.6 <= 1
}
