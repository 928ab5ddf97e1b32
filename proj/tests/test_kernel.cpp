#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "boltz/error.hpp"
#include "boltz/kernel.hpp"
#include "boltz/quadrature.hpp"
#include "boltz/suites.hpp"

using namespace boltz;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("post_collision symmetry case") {
  auto [vp, vsp] = post_collision({1, 0, 0}, {-1, 0, 0}, {0, 1, 0});
  CHECK(norm(vp - Vec3{0, 1, 0}) < 1e-14);
  CHECK(norm(vsp - Vec3{0, -1, 0}) < 1e-14);
}

TEST_CASE("post_collision identity when sigma along n") {
  const Vec3 v{0.3, -1.2, 2.0}, vs{-0.5, 0.7, 1.1};
  const Vec3 sigma = (v - vs) / norm(v - vs);
  auto [vp, vsp] = post_collision(v, vs, sigma);
  CHECK(norm(vp - v) < 1e-13);
  CHECK(norm(vsp - vs) < 1e-13);
}

TEST_CASE("post_collision conserves energy and momentum on random samples") {
  CHECK(suite_post_collision(12345, 20000) == 0);
}

TEST_CASE("post_collision rejects non-unit sigma") {
  CHECK_THROWS_AS(post_collision({1, 0, 0}, {0, 0, 0}, {0.5, 0, 0}), std::domain_error);
}

TEST_CASE("angular profile values and partition") {
  KernelConfig k;
  k.s = 0.5;
  // b(pi/2) = (pi/2)^-2 / sin(pi/2)
  CHECK(angular_profile(k, 0.5 * pi, AngularVariant::full) ==
        doctest::Approx(std::pow(0.5 * pi, -2.0)).epsilon(1e-12));
  CHECK(angular_profile(k, 0.5 * pi, AngularVariant::full) == doctest::Approx(0.405285).epsilon(1e-4));

  // indicator split: sin(theta/2) = 0.2 < eps = 0.3 puts theta in the grazing part
  const double theta = 2.0 * std::asin(0.2);
  CHECK(angular_profile(k, theta, AngularVariant::cutoff, 0.3) == 0.0);
  CHECK(angular_profile(k, theta, AngularVariant::grazing, 0.3) ==
        doctest::Approx(k.b(theta)).epsilon(1e-14));

  // partition of unity off the measure-zero boundary
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(1e-3, 0.5 * pi);
  for (int i = 0; i < 1000; ++i) {
    const double t = u(rng);
    const double full = angular_profile(k, t, AngularVariant::full);
    const double cut = angular_profile(k, t, AngularVariant::cutoff, 0.3);
    const double graz = angular_profile(k, t, AngularVariant::grazing, 0.3);
    CHECK(cut + graz == doctest::Approx(full).epsilon(1e-14));
  }

  CHECK_THROWS_AS(angular_profile(k, -0.1, AngularVariant::full), std::domain_error);
  CHECK_THROWS_AS(angular_profile(k, 2.0, AngularVariant::full), std::domain_error);
}

TEST_CASE("kernel pinch is exactly 1 for the model profile") {
  KernelConfig k;
  for (double s : {0.25, 0.5, 0.75}) {
    k.s = s;
    CHECK(suite_pinch(k, 2000) == 0);
    CHECK(std::pow(0.3, 1.0 + 2.0 * s) * std::sin(0.3) * k.b(0.3) == doctest::Approx(1.0));
  }
}

TEST_CASE("angular constants against the frozen quadrature oracle") {
  KernelConfig k;
  k.s = 0.5;
  const auto c = angular_constants(k, 0.2);
  // Oracle values computed with 30-digit adaptive quadrature of the model
  // profile (independent of integrate_log_panels).
  CHECK(c.A2 == doctest::Approx(7.63606367483771).epsilon(1e-10));
  CHECK(c.A2_eps_half == doctest::Approx(1.67663236242104).epsilon(1e-8));
  CHECK(c.A2_eps_full == doctest::Approx(5.150735402918).epsilon(1e-8));

  k.s = 0.25;
  CHECK(angular_a2(k) == doctest::Approx(5.87601277466914).epsilon(1e-10));
  k.s = 0.75;
  CHECK(angular_a2(k) == doctest::Approx(13.5791978450427).epsilon(1e-10));
}

TEST_CASE("A2 adaptive quadrature agrees with midpoint refinement oracle") {
  KernelConfig k;
  k.s = 0.5;
  const double a2 = angular_a2(k);
  // midpoint rule on [delta, pi/2] with shrinking delta and growing n
  double prev = 0.0;
  for (int level = 0; level < 6; ++level) {
    const double delta = 1e-3 * std::pow(0.25, level);
    const long n = 40000L << level;
    const double hstep = (0.5 * pi - delta) / n;
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
      const double t = delta + (i + 0.5) * hstep;
      acc += std::pow(t, -2.0) * std::sin(t) * std::sin(t);
    }
    // tail below delta: integrand ~ t^{1-2s} = 1 exactly at s=0.5 leading order
    prev = 2.0 * pi * (acc * hstep + delta);
  }
  CHECK(a2 == doctest::Approx(prev).epsilon(1e-6));
}

TEST_CASE("A_eps divergence rate and monotonicity") {
  KernelConfig k;
  k.s = 0.5;
  const double a1 = angular_constants(k, 0.1).A_eps;
  const double a05 = angular_constants(k, 0.05).A_eps;
  // frozen oracle values (30-digit quadrature)
  CHECK(a1 == doctest::Approx(27.3634175379510).epsilon(1e-9));
  CHECK(a05 == doctest::Approx(58.8056545650254).epsilon(1e-9));
  // ratio approaches 2^{2s} = 2 from above as eps -> 0
  CHECK(a05 / a1 == doctest::Approx(2.1490).epsilon(1e-3));
  const double a002 = angular_constants(k, 0.02).A_eps;
  const double a001 = angular_constants(k, 0.01).A_eps;
  CHECK(a001 / a002 == doctest::Approx(2.0).epsilon(0.02));

  // strict monotonicity in eps; A2_eps_full increases to A2 as eps decreases
  double prev_aeps = 0.0, prev_full = -1.0;
  for (double eps : {0.7, 0.5, 0.3, 0.2, 0.1, 0.05}) {
    const auto c = angular_constants(k, eps);
    CHECK(c.A_eps > prev_aeps);
    CHECK(c.A2_eps_full > prev_full);
    prev_aeps = c.A_eps;
    prev_full = c.A2_eps_full;
    CHECK(c.A2_eps_full <= c.A2 * (1 + 1e-12));
  }
  // the residual band mass is ~ 2 pi (2 eps)^{2-2s}/(2-2s) = 0.0126 at eps = 1e-3
  CHECK(angular_constants(k, 0.001).A2_eps_full == doctest::Approx(angular_a2(k)).epsilon(2e-3));

  // boundary eps = sqrt(2)/2: the cutoff keeps only theta = pi/2 (measure zero)
  const auto cb = angular_constants(k, std::sqrt(2.0) / 2.0);
  CHECK(cb.A2_eps_full == 0.0);
  CHECK(cb.A_eps == 0.0);
  CHECK_THROWS_AS(angular_constants(k, 0.0), NumericError);
}

TEST_CASE("collision geometry identity <v'>^2 = E + h (j.omega) sin theta") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 2000; ++i) {
    const Vec3 v{u(rng), u(rng), u(rng)}, vs{u(rng), u(rng), u(rng)};
    Vec3 sigma{nd(rng), nd(rng), nd(rng)};
    sigma = sigma / norm(sigma);
    if (dot(sigma, v - vs) < 0) sigma = -sigma;
    const auto g = make_collision_geometry(v, vs, sigma);
    CHECK(std::fabs(dot(g.n, g.omega)) < 1e-10);
    CHECK(g.h >= -1e-12);
    CHECK(g.h <= bracket(v) * bracket(vs) + 1e-9);
    auto [vp, vsp] = post_collision(v, vs, sigma);
    const double lhs = bracket2(vp);
    const double rhs = g.E_theta + g.h * dot(g.j, g.omega) * std::sin(g.theta);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("primededuct: theta = 0 and degenerate partner") {
  const Vec3 v{1.0, 2.0, -0.5}, vs{-0.3, 0.4, 1.7};
  const Vec3 sigma = (v - vs) / norm(v - vs);
  const auto g = make_collision_geometry(v, vs, sigma);
  CHECK(check_primededuct(g, 2.0));
  CHECK(check_primededuct(g, 4.5));

  // v* = 0 makes h = 0
  const auto g2 = make_collision_geometry(v, {0, 0, 0}, Vec3{0, 0, 1});
  CHECK(g2.h == doctest::Approx(0.0));
  CHECK(check_primededuct(g2, 3.0));

  CHECK_THROWS_AS(check_primededuct(g, 1.5), std::domain_error);
}

TEST_CASE("primededuct randomized suite (reduced)") {
  KernelConfig k;
  CHECK(suite_primededuct(k, 2024, 5000, {2.0, 3.0, 4.5}) == 0);
}

TEST_CASE("theta bound: coincident velocities and scaling") {
  KernelConfig k;
  CHECK(theta_moment_integral(k, {1, 2, 3}, {1, 2, 3}, 3.0) == 0.0);
  CHECK(check_theta_bound(k, {1, 2, 3}, {1, 2, 3}, 3.0));
  CHECK_THROWS_AS(check_theta_bound(k, {1, 0, 0}, {0, 1, 0}, 2.5), std::domain_error);

  // homogeneity: Theta(c v, c v*) / c^{2p+gamma} stays bounded as c grows
  const Vec3 v{0.8, -0.3, 0.5}, vs{-0.4, 0.6, 0.2};
  const double p = 3.0;
  double prev = 0.0;
  for (double c : {1.0, 2.0, 4.0}) {
    const double val =
        std::fabs(theta_moment_integral(k, v * c, vs * c, p)) / std::pow(c, 2.0 * p + k.gamma);
    if (prev > 0.0) CHECK(val < 64.0 * prev + 1e3);
    prev = val;
  }
}

TEST_CASE("theta bound randomized suite (reduced)") {
  KernelConfig k;
  CHECK(suite_theta_bound(k, 77, 300, {3.0, 4.0}) == 0);
}

TEST_CASE("kernel config validation") {
  KernelConfig k;
  k.gamma = 0.0;
  CHECK_THROWS_AS(k.validate(), ConfigError);
  k.gamma = 1.0;
  k.s = 1.0;
  CHECK_THROWS_AS(k.validate(), ConfigError);
  k.s = 0.5;
  k.K = 0.5;
  CHECK_THROWS_AS(k.validate(), ConfigError);
}
