#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "plap/errors.hpp"
#include "plap/norms.hpp"
#include "plap/radial.hpp"

using namespace plap;
using namespace plap::radial;

TEST_CASE("torsion closed form: hand values and boundary") {
  auto disk = torsion_closed_form({2, 1.0}, 2.0);
  CHECK(disk.values.front() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(disk.values.back() == 0.0);

  auto ball3 = torsion_closed_form({3, 1.0}, 2.0);
  CHECK(ball3.values.front() == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

  auto odd = torsion_closed_form({4, 2.5}, 3.7, 41);
  CHECK(odd.values.back() == 0.0);
}

TEST_CASE("kp hand values") {
  CHECK(kp({2, 1.0}, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(kp({3, 1.0}, 2.0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(kp({1, 1.0}, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("kp equals sup_norm(torsion)^{1-p}") {
  for (const BallDomain dom : {BallDomain{1, 0.5}, BallDomain{2, 1.0},
                               BallDomain{3, 2.0}, BallDomain{4, 1.25}}) {
    for (double p : {1.2, 2.0, 3.7}) {
      CAPTURE(dom.dimension);
      CAPTURE(p);
      const double direct = kp(dom, p);
      const double via_torsion =
          std::pow(sup_norm(torsion_closed_form(dom, p, 201)), 1.0 - p);
      CHECK(direct == doctest::Approx(via_torsion).epsilon(1e-12));
    }
  }
}

TEST_CASE("green_apply of a unit source reproduces the torsion function") {
  const BallDomain disk{2, 1.0};
  RadialFunction one{1.0, std::vector<double>(101, 1.0)};
  auto u = green_apply(one, disk, 2.0);
  auto phi = torsion_closed_form(disk, 2.0, 101);
  for (int i = 0; i < 101; ++i)
    CHECK(std::abs(u.values[i] - phi.values[i]) <= 1e-6);
}

TEST_CASE("green_apply N = 1 analytic case") {
  const BallDomain line{1, 1.0};
  RadialFunction one{1.0, std::vector<double>(101, 1.0)};
  auto u = green_apply(one, line, 2.0);
  CHECK(u.values.front() == doctest::Approx(0.5).epsilon(1e-13));
  for (int i = 0; i < 101; ++i) {
    const double r = u.r(i);
    CHECK(u.values[i] == doctest::Approx(0.5 * (1.0 - r * r)).epsilon(1e-12));
  }
}

TEST_CASE("green_apply zero source and negative rejection") {
  const BallDomain disk{2, 1.0};
  RadialFunction zero{1.0, std::vector<double>(51, 0.0)};
  auto u = green_apply(zero, disk, 3.0);
  for (double v : u.values) CHECK(v == 0.0);

  RadialFunction bad = zero;
  bad.values[10] = -1e-6;
  CHECK_THROWS_AS(green_apply(bad, disk, 3.0), std::invalid_argument);

  // tiny negative noise is clamped, not rejected
  bad.values[10] = -1e-15;
  CHECK_NOTHROW(green_apply(bad, disk, 3.0));
}

TEST_CASE("supersolution normalization and amplification") {
  BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.99;

  P.mu = kp(disk, P.p);
  auto v = supersolution(disk, P);
  CHECK(v.values.front() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(v.values.back() == 0.0);

  // mu = 2 k_p with p - q = 0.01 amplifies by 2^100
  P.mu = 8.0;
  auto big = supersolution(disk, P);
  CHECK(big.values.front() ==
        doctest::Approx(std::pow(2.0, 100.0)).epsilon(1e-10));
}

TEST_CASE("inverse iteration reproduces the disk eigenvalue bracket") {
  BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.99;
  P.mu = kp(disk, P.p);
  auto est = inverse_iterate_ball(disk, P);
  CHECK(est.trace.converged);
  CHECK(std::abs(est.mu_q - 5.7616) < 5e-3);
  CHECK(est.mu_q >= kp(disk, P.p) - 1e-10);
  CHECK(est.mu_q <= est.lambda_upper);
  CHECK(sup_norm(std::get<RadialFunction>(est.eigenfunction)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // interior positivity
  const auto& u = std::get<RadialFunction>(est.eigenfunction);
  for (int i = 0; i + 1 < u.n_points(); ++i) CHECK(u.values[i] > 0.0);
  // final recorded step satisfies the stopping criterion
  CHECK(est.trace.steps.back().rel_change < P.outer_tol);
}

TEST_CASE("monotone decay of the iterates") {
  const BallDomain ball{3, 1.0};
  ProblemParams P;
  P.p = 2.5;
  P.q = 2.45;
  P.mu = kp(ball, P.p);
  RadialFunction v = supersolution(ball, P);
  for (int step = 0; step < 40; ++step) {
    RadialFunction source = v;
    for (double& x : source.values) x = P.mu * std::pow(x, P.q - 1.0);
    RadialFunction next = green_apply(source, ball, P.p);
    for (int i = 0; i < v.n_points(); ++i)
      CHECK(next.values[i] <= v.values[i] + 1e-12);
    v = next;
  }
}

TEST_CASE("scaling law across mu") {
  const BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.95;
  P.mu = kp(disk, P.p);
  auto base = inverse_iterate_ball(disk, P);

  ProblemParams P2 = P;
  P2.mu = 1.25 * P.mu;
  auto scaled = inverse_iterate_ball(disk, P2);

  // mu_q and the normalized profile are mu-independent
  CHECK(scaled.mu_q == doctest::Approx(base.mu_q).epsilon(1e-9));
  const auto& u1 = std::get<RadialFunction>(base.eigenfunction);
  const auto& u2 = std::get<RadialFunction>(scaled.eigenfunction);
  for (int i = 0; i < u1.n_points(); ++i)
    CHECK(std::abs(u1.values[i] - u2.values[i]) < 1e-10);

  // raw profiles differ by exactly (mu2/mu1)^{1/(p-q)}
  const double c = std::pow(P2.mu / P.mu, 1.0 / (P.p - P.q));
  const double s1 = std::pow(P.mu / base.mu_q, 1.0 / (P.p - P.q));
  const double s2 = std::pow(P2.mu / scaled.mu_q, 1.0 / (P2.p - P2.q));
  for (int i = 0; i < u1.n_points(); ++i) {
    const double v1 = u1.values[i] * s1;
    const double v2 = u2.values[i] * s2;
    CHECK(std::abs(v2 - c * v1) <= 1e-6 * c * s1);
  }
}

TEST_CASE("fixed-point residual of the converged eigenfunction") {
  const BallDomain ball{3, 1.0};
  ProblemParams P;
  P.p = 1.5;
  P.q = 1.45;
  P.mu = kp(ball, P.p);
  auto est = inverse_iterate_ball(ball, P);
  const auto& u = std::get<RadialFunction>(est.eigenfunction);
  RadialFunction source = u;
  for (double& x : source.values) x = est.mu_q * std::pow(x, P.q - 1.0);
  auto back = green_apply(source, ball, P.p);
  double diff = 0.0;
  for (int i = 0; i < u.n_points(); ++i)
    diff = std::max(diff, std::abs(back.values[i] - u.values[i]));
  CHECK(diff < 10.0 * P.outer_tol * sup_norm(u));
}

TEST_CASE("converged iterate sits below the supersolution") {
  const BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 3.0;
  P.q = 2.9;
  P.mu = kp(disk, P.p);
  auto est = inverse_iterate_ball(disk, P);
  const auto& u = std::get<RadialFunction>(est.eigenfunction);
  const double scale = std::pow(P.mu / est.mu_q, 1.0 / (P.p - P.q));
  auto bar = supersolution(disk, P);
  for (int i = 0; i < u.n_points(); ++i)
    CHECK(u.values[i] * scale <= bar.values[i] + 1e-12);
}

TEST_CASE("iterate range guards") {
  const BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.999;
  P.mu = 1e6 * kp(disk, P.p);  // amplitude (1e6)^{1000}: overflow
  CHECK_THROWS_AS(inverse_iterate_ball(disk, P), SolverError);

  P.mu = kp(disk, P.p);
  P.q = 2.0 - 3e-4;  // fixed point near e^{-1200}: underflow
  CHECK_THROWS_AS(inverse_iterate_ball(disk, P), SolverError);

  P.q = 1.99;
  P.max_outer_iters = 3;
  CHECK_THROWS_AS(inverse_iterate_ball(disk, P), SolverError);
}

TEST_CASE("normalized iteration survives tiny gaps and matches algorithm 1") {
  const BallDomain disk{2, 1.0};
  ProblemParams P;
  P.p = 2.0;
  P.q = 1.99;
  P.outer_tol = 1e-12;
  P.mu = kp(disk, P.p);
  auto a1 = inverse_iterate_ball(disk, P);
  auto a2 = normalized_iterate_ball(disk, P);
  CHECK(a2.mu_q == doctest::Approx(a1.mu_q).epsilon(1e-10));
  const auto& u1 = std::get<RadialFunction>(a1.eigenfunction);
  const auto& u2 = std::get<RadialFunction>(a2.eigenfunction);
  for (int i = 0; i < u1.n_points(); ++i)
    CHECK(std::abs(u1.values[i] - u2.values[i]) < 1e-10);

  // gap far below the algorithm-1 underflow threshold
  ProblemParams tiny = P;
  tiny.outer_tol = 1e-9;
  tiny.q = 2.0 - 1e-6;
  auto est = normalized_iterate_ball(disk, tiny);
  CHECK(est.trace.converged);
  // approaches the discrete eigenvalue: j01^2 up to quadrature error
  CHECK(est.mu_q > 5.7616);
  CHECK(est.mu_q == doctest::Approx(5.7832).epsilon(1e-3));
}
