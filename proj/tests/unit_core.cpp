#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "plap/norms.hpp"
#include "plap/params.hpp"
#include "plap/radial.hpp"

using namespace plap;

TEST_CASE("validate_params accepts a sane configuration") {
  ProblemParams p;
  p.p = 2.0;
  p.q = 1.99;
  p.mu = 4.0;
  p.epsilon = 0.0;
  CHECK_NOTHROW(validate_params(p));
}

TEST_CASE("validate_params rejects boundary violations by name") {
  ProblemParams p;
  p.p = 2.0;
  p.q = 2.0;
  p.mu = 1.0;
  CHECK_THROWS_WITH_AS(validate_params(p), "invalid parameters: q must be < p",
                       std::invalid_argument);

  p.q = 0.5;
  p.p = 1.0;
  CHECK_THROWS_WITH_AS(validate_params(p), "invalid parameters: p must be > 1",
                       std::invalid_argument);

  p.p = 2.0;
  p.q = 1.5;
  p.mu = -1.0;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  p.mu = 1.0;
  p.epsilon = -1e-9;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  p.epsilon = 0.0;
  p.outer_tol = 0.0;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
}

TEST_CASE("validate_params permits q = p only behind the experimental flag") {
  ProblemParams p;
  p.p = 2.5;
  p.q = 2.5;
  CHECK_THROWS_AS(validate_params(p), std::invalid_argument);
  p.allow_q_equal_p = true;
  CHECK_NOTHROW(validate_params(p));
}

TEST_CASE("sup_norm basics") {
  RadialFunction f{1.0, std::vector<double>(101, 1.0)};
  CHECK(sup_norm(f) == doctest::Approx(1.0));

  // torsion profile of the unit disk at p = 2 peaks at 1/4
  auto phi = radial::torsion_closed_form({2, 1.0}, 2.0, 101);
  CHECK(sup_norm(phi) == doctest::Approx(0.25).epsilon(1e-14));

  GridFunction2D z{SquareMesh{8}};
  CHECK(sup_norm(z) == 0.0);
}

TEST_CASE("sup_norm is absolutely homogeneous") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  RadialFunction f{1.0, std::vector<double>(51)};
  for (double& v : f.values) v = dist(rng);
  for (double c : {-3.5, -1.0, 0.0, 0.25, 10.0}) {
    RadialFunction g = f;
    for (double& v : g.values) v *= c;
    CHECK(sup_norm(g) == doctest::Approx(std::abs(c) * sup_norm(f)).epsilon(1e-13));
  }
}

TEST_CASE("radial lp_norm: constants on the unit interval and ball") {
  // f == 1 on [0,1] at N = 1 carries the symmetric-interval factor 2
  RadialFunction one{1.0, std::vector<double>(101, 1.0)};
  CHECK(lp_norm(one, 2.0, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  RadialFunction zero{1.0, std::vector<double>(101, 0.0)};
  CHECK(lp_norm(zero, 3.0, 2) == 0.0);

  // |B_1| in the plane is pi: ||1||_r = pi^{1/r}
  CHECK(lp_norm(one, 2.0, 2) ==
        doctest::Approx(std::sqrt(std::acos(-1.0))).epsilon(1e-9));
}

TEST_CASE("square lp_norm: unit measure") {
  GridFunction2D one{SquareMesh{16}};
  for (double& v : one.values) v = 1.0;
  CHECK(lp_norm(one, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  GridFunction2D zero{SquareMesh{16}};
  CHECK(lp_norm(zero, 1.5) == 0.0);
}

TEST_CASE("Hoelder monotonicity of lp_norm on the unit square") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    GridFunction2D f{SquareMesh{9}};
    for (double& v : f.values) v = dist(rng);
    const double r = 1.0 + 3.0 * std::generate_canonical<double, 53>(rng);
    const double s = r + 2.0 * std::generate_canonical<double, 53>(rng);
    CHECK(lp_norm(f, r) <= lp_norm(f, s) * (1.0 + 1e-12));
  }
}
