#include "boltz/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "boltz/error.hpp"
#include "boltz/quadrature.hpp"

namespace boltz {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double sqrt2_over_2 = 0.70710678118654752440;

double cutoff_angle(double eps) { return 2.0 * std::asin(eps); }
}  // namespace

void KernelConfig::validate() const {
  if (!(gamma > 0.0) || gamma > 2.0)
    throw ConfigError("kernel: gamma must satisfy 0 < gamma <= 2 (hard potentials)");
  if (!(s > 0.0) || !(s < 1.0)) throw ConfigError("kernel: s must satisfy 0 < s < 1");
  if (!(K >= 1.0)) throw ConfigError("kernel: K must be >= 1");
  if (!(theta_min > 0.0) || theta_min >= 0.5 * pi)
    throw ConfigError("kernel: theta_min must lie in (0, pi/2)");
}

double KernelConfig::b(double theta) const {
  return std::pow(theta, -1.0 - 2.0 * s) / std::sin(theta);
}

double angular_profile(const KernelConfig& k, double theta, AngularVariant variant, double eps) {
  if (!(theta > 0.0) || theta > 0.5 * pi + 1e-15)
    throw std::domain_error("angular_profile: theta must lie in (0, pi/2]");
  const double full = k.b(theta);
  if (variant == AngularVariant::full) return full;
  if (!(eps > 0.0) || eps > sqrt2_over_2 + 1e-15)
    throw std::domain_error("angular_profile: eps must lie in (0, sqrt(2)/2]");
  const double sh = std::sin(0.5 * theta);
  if (variant == AngularVariant::cutoff) return sh >= eps ? full : 0.0;
  return sh <= eps ? full : 0.0;
}

double angular_a2(const KernelConfig& k) {
  // int_{S^2} b sin^2 dsigma = 2 pi int_0^{pi/2} theta^{-1-2s} sin^2(theta) dtheta;
  // integrand ~ theta^{1-2s} at zero, integrable for s < 1.
  const double s = k.s;
  return 2.0 * pi *
         integrate_singular_at_zero(
             [s](double t) { return std::pow(t, -1.0 - 2.0 * s) * std::sin(t) * std::sin(t); },
             0.5 * pi, 1e-14);
}

AngularConstants angular_constants(const KernelConfig& k, double eps) {
  if (!(eps > 0.0))
    throw NumericError("angular_constants: A_eps diverges for eps <= 0");
  if (eps > sqrt2_over_2 + 1e-15)
    throw std::domain_error("angular_constants: eps must lie in (0, sqrt(2)/2]");
  AngularConstants out;
  out.A2 = angular_a2(k);
  const double s = k.s;
  const double te = std::min(cutoff_angle(eps), 0.5 * pi);
  if (te >= 0.5 * pi * (1.0 - 1e-14)) {
    out.A_eps = out.A2_eps_full = out.A2_eps_half = 0.0;
    return out;
  }
  auto bsin = [s](double t) { return std::pow(t, -1.0 - 2.0 * s); };  // b(cos t) sin t
  out.A_eps = 2.0 * pi * integrate_log_panels([&](double t) { return bsin(t); }, te, 0.5 * pi, 8);
  out.A2_eps_full = 2.0 * pi *
                    integrate_log_panels(
                        [&](double t) {
                          const double st = std::sin(t);
                          return bsin(t) * st * st;
                        },
                        te, 0.5 * pi, 8);
  out.A2_eps_half = 2.0 * pi *
                    integrate_log_panels(
                        [&](double t) {
                          const double sh = std::sin(0.5 * t);
                          return bsin(t) * sh * sh;
                        },
                        te, 0.5 * pi, 8);
  return out;
}

double angular_a2_band(const KernelConfig& k, double eps) {
  const double s = k.s;
  const double te = std::min(cutoff_angle(eps), 0.5 * pi);
  if (te <= k.theta_min) return 0.0;
  return 2.0 * pi *
         integrate_log_panels(
             [s](double t) {
               const double st = std::sin(t);
               return std::pow(t, -1.0 - 2.0 * s) * st * st;
             },
             k.theta_min, te, 8);
}

std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& v_star, const Vec3& sigma) {
  if (std::fabs(norm2(sigma) - 1.0) > 2e-12)
    throw std::domain_error("post_collision: sigma must be a unit vector");
  const Vec3 center = (v + v_star) * 0.5;
  const Vec3 offset = sigma * (0.5 * norm(v - v_star));
  return {center + offset, center - offset};
}

CollisionGeometry make_collision_geometry(const Vec3& v, const Vec3& v_star, const Vec3& sigma) {
  if (std::fabs(norm2(sigma) - 1.0) > 2e-12)
    throw std::domain_error("collision geometry: sigma must be a unit vector");
  CollisionGeometry g;
  g.v = v;
  g.v_star = v_star;

  const Vec3 u_rel = v - v_star;
  const double ur = norm(u_rel);
  if (ur > 0.0) {
    g.n = u_rel / ur;
  } else {
    g.n = {1, 0, 0};  // theta undefined for coincident velocities; any frame works
  }
  double ct = dot(g.n, sigma);
  ct = std::fmax(-1.0, std::fmin(1.0, ct));
  g.theta = std::acos(ct);
  const double st = std::sin(g.theta);
  if (st > 1e-14) {
    g.omega = (sigma - g.n * ct) / st;
  } else {
    Vec3 e1, e2;
    orthonormal_frame(g.n, e1, e2);
    g.omega = e1;  // sin(theta) = 0 kills every omega-dependent term
  }

  const double b2v = bracket2(v), b2vs = bracket2(v_star);
  const double ch2 = 0.5 * (1.0 + ct), sh2 = 0.5 * (1.0 - ct);  // cos^2, sin^2 of theta/2
  g.E_theta = b2v * ch2 + b2vs * sh2;
  const double h2 = norm2(v) * norm2(v_star) - dot(v, v_star) * dot(v, v_star);
  g.h = h2 > 0.0 ? std::sqrt(h2) : 0.0;

  const Vec3 u_sum = v + v_star;
  const double us = norm(u_sum);
  if (us > 1e-14) {
    const Vec3 uhat = u_sum / us;
    const Vec3 jraw = uhat - g.n * dot(uhat, g.n);
    const double jn = norm(jraw);
    if (jn > 1e-14) {
      g.j = jraw / jn;
    } else {
      Vec3 e1, e2;
      orthonormal_frame(g.n, e1, e2);
      g.j = e1;  // u parallel to n means h = 0; j is then immaterial
    }
  } else {
    Vec3 e1, e2;
    orthonormal_frame(g.n, e1, e2);
    g.j = e1;  // center of mass at origin: h = 0 as well
  }
  return g;
}

bool check_primededuct(const CollisionGeometry& g, double p) {
  if (p < 2.0) throw std::domain_error("check_primededuct: proposition requires p >= 2");
  const double b2v = bracket2(g.v), b2vs = bracket2(g.v_star);
  const double st = std::sin(g.theta);
  const double ch2 = std::cos(0.5 * g.theta) * std::cos(0.5 * g.theta);
  const double sh2 = std::sin(0.5 * g.theta) * std::sin(0.5 * g.theta);

  const double jw = dot(g.j, g.omega);
  const double vprime2 = g.E_theta + g.h * jw * st;  // <v'>^2
  const double lhs = std::pow(vprime2, p) - std::pow(b2v, p);

  const double c1 = 0.5 * std::fmax(std::pow(2.0, p - 3.0), 1.0) * p * (p - 1.0) +
                    std::pow(2.0, p - 1.0);
  const double rhs = -std::pow(b2v, p) * (1.0 - std::pow(ch2, p)) +
                     std::pow(b2vs, p) * std::pow(sh2, p) +
                     p * std::pow(g.E_theta, p - 1.0) * g.h * jw * st +
                     c1 * std::pow(b2vs, p - 1.0) * std::pow(b2v, p - 1.0) * st * st;
  const double scale = std::pow(b2v + b2vs, p);
  return lhs <= rhs + 1e-9 * scale;
}

double theta_moment_integral(const KernelConfig& k, const Vec3& v, const Vec3& v_star, double p) {
  const Vec3 u = v - v_star;
  const double ur = norm(u);
  if (ur == 0.0) return 0.0;
  const double kin = std::pow(ur, k.gamma);
  const double m_v = std::pow(bracket2(v), p), m_vs = std::pow(bracket2(v_star), p);

  Vec3 n = u / ur, e1, e2;
  orthonormal_frame(n, e1, e2);

  const int n_az = 16;
  const double s = k.s;
  // polar integrand: 2pi-normalized azimuth average of the moment deficit,
  // times b sin(theta); O(theta^{1-2s}) near zero, truncated at theta_min.
  auto polar = [&](double t) {
    const double ct = std::cos(t), st = std::sin(t);
    double az = 0.0;
    for (int a = 0; a < n_az; ++a) {
      const double phi = 2.0 * pi * a / n_az;
      const Vec3 sigma = n * ct + (e1 * std::cos(phi) + e2 * std::sin(phi)) * st;
      auto [vp, vsp] = post_collision(v, v_star, sigma);
      az += std::pow(bracket2(vp), p) + std::pow(bracket2(vsp), p) - m_v - m_vs;
    }
    az /= n_az;
    return az * std::pow(t, -1.0 - 2.0 * s);  // b(cos t) sin t = t^{-1-2s}
  };
  return 2.0 * pi * kin * integrate_log_panels(polar, k.theta_min, 0.5 * pi, 6);
}

bool check_theta_bound(const KernelConfig& k, const Vec3& v, const Vec3& v_star, double p) {
  if (p < 3.0) throw std::domain_error("check_theta_bound: proposition requires p >= 3");
  const double theta = theta_moment_integral(k, v, v_star, p);
  const double A2 = angular_a2(k);
  const double b2v = bracket2(v), b2vs = bracket2(v_star);
  const double bound = -0.25 * A2 *
                           (std::pow(b2v, p + 0.5 * k.gamma) + std::pow(b2vs, p + 0.5 * k.gamma)) +
                       std::pow(2.0, 2.0 * p + 1.0) * A2 * std::pow(b2v, p) * std::pow(b2vs, p);
  const double scale = A2 * (std::pow(b2v, p + 0.5 * k.gamma) + std::pow(b2vs, p + 0.5 * k.gamma));
  return theta <= bound + 1e-9 * scale;
}

}  // namespace boltz
