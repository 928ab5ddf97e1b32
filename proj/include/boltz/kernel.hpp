#ifndef BOLTZ_KERNEL_HPP
#define BOLTZ_KERNEL_HPP

#include <utility>

#include "boltz/vec3.hpp"

namespace boltz {

/// Physical and kernel parameters.
///
/// The angular profile is the pinched model b(cos t) = t^(-1-2s)/sin(t),
/// supported on 0 < t <= pi/2, for which the pinching bounds
///   K^-1 t^(-1-2s) <= sin(t) b(cos t) <= K t^(-1-2s)
/// hold with K = 1 exactly. The kinetic factor is |v - v*|^gamma.
struct KernelConfig {
  double gamma = 1.0;      ///< kinetic exponent, 0 < gamma <= 2
  double s = 0.5;          ///< angular singularity exponent, 0 < s < 1
  double K = 1.0;          ///< pinching constant, >= 1
  double theta_min = 1e-4; ///< polar quadrature floor (radians)
  double lambda = 0.0;     ///< Landau strength constant; <= 0 means "not calibrated yet"

  /// Throws ConfigError if any parameter is outside its admissible range.
  void validate() const;

  /// Model angular profile b(cos theta), theta in (0, pi/2].
  double b(double theta) const;

  bool lambda_set() const { return lambda > 0.0; }
};

enum class AngularVariant { full, cutoff, grazing };

/// b, b^eps = b 1_{sin(theta/2) >= eps}, or b_eps = b 1_{sin(theta/2) <= eps}.
/// Throws std::domain_error for theta outside (0, pi/2] or eps outside (0, sqrt2/2].
double angular_profile(const KernelConfig& k, double theta, AngularVariant variant,
                       double eps = 0.0);

/// Angular integrals of the model profile over the sphere (all include the
/// 2 pi azimuthal factor):
///   A2          = int b sin^2(theta) dsigma            (finite for 0 < s < 1)
///   A_eps       = int b^eps dsigma                     (diverges as eps -> 0)
///   A2_eps_full = int b^eps sin^2(theta) dsigma
///   A2_eps_half = int b^eps sin^2(theta/2) dsigma
struct AngularConstants {
  double A2 = 0.0;
  double A_eps = 0.0;
  double A2_eps_full = 0.0;
  double A2_eps_half = 0.0;
};

AngularConstants angular_constants(const KernelConfig& k, double eps);

/// A2 alone (no cutoff needed).
double angular_a2(const KernelConfig& k);

/// Mass of the grazing band, int b 1_{sin(theta/2) <= eps} sin^2(theta) dsigma,
/// truncated below at theta_min.
double angular_a2_band(const KernelConfig& k, double eps);

/// Post-collision velocities in the sigma-representation:
///   v'  = (v + v*)/2 + (|v - v*|/2) sigma
///   v*' = (v + v*)/2 - (|v - v*|/2) sigma
/// Throws std::domain_error if |sigma| deviates from 1 by more than 1e-12.
std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& v_star, const Vec3& sigma);

/// Collision geometry entering the <v'>^2p moment inequality.
///
/// n = (v - v*)/|v - v*|, sigma = cos(theta) n + sin(theta) omega with
/// omega unit and orthogonal to n, u = (v + v*)/|v + v*|,
/// j = (u - (u.n) n)/|u - (u.n) n|, h = sqrt(|v|^2 |v*|^2 - (v.v*)^2),
/// E_theta = <v>^2 cos^2(theta/2) + <v*>^2 sin^2(theta/2).
/// The identity <v'>^2 = E_theta + h (j.omega) sin(theta) holds.
struct CollisionGeometry {
  Vec3 v, v_star;
  double theta = 0.0;
  Vec3 n, omega, j;
  double E_theta = 0.0;
  double h = 0.0;
};

/// Builds the geometry from velocities and a unit sigma.
/// Degenerate directions (v = v*, v + v* = 0, or u parallel to n) pick an
/// arbitrary unit vector where the proposition leaves the choice free; in all
/// those cases the corresponding term vanishes (h = 0 or sin(theta) = 0).
CollisionGeometry make_collision_geometry(const Vec3& v, const Vec3& v_star, const Vec3& sigma);

/// Pointwise moment inequality for <v'>^2p (p >= 2):
///   <v'>^2p - <v>^2p <= -<v>^2p (1 - cos^2p(theta/2)) + <v*>^2p sin^2p(theta/2)
///     + p E(theta)^(p-1) h (j.omega) sin(theta)
///     + (max{2^(p-3),1} p(p-1)/2 + 2^(p-1)) <v*>^(2p-2) <v>^(2p-2) sin^2(theta).
/// Throws std::domain_error for p < 2.
bool check_primededuct(const CollisionGeometry& g, double p);

/// Angular-moment bound: with
///   Theta(v,v*) = int b |v-v*|^gamma (<v'>^2p + <v*'>^2p - <v>^2p - <v*>^2p) dsigma
/// checks Theta <= -A2/4 (<v>^(2p+gamma) + <v*>^(2p+gamma))
///               + 2^(2p+1) A2 <v>^2p <v*>^2p.
/// Theta is computed by polar/azimuthal quadrature (the integrand is O(theta^2) b,
/// so the grazing singularity is integrable). Throws std::domain_error for p < 3.
bool check_theta_bound(const KernelConfig& k, const Vec3& v, const Vec3& v_star, double p);

/// Numeric value of Theta(v, v*) used by check_theta_bound (exposed for tests).
double theta_moment_integral(const KernelConfig& k, const Vec3& v, const Vec3& v_star, double p);

}  // namespace boltz

#endif
