#ifndef BOLTZ_LANDAU_HPP
#define BOLTZ_LANDAU_HPP

#include <array>

#include "boltz/analytic.hpp"
#include "boltz/grid.hpp"
#include "boltz/kernel.hpp"

namespace boltz {

/// Coefficients of the Landau operator for hard potentials:
///   a(z) = Lambda |z|^(gamma+2) (I - zhat x zhat)
///   b_i(z) = sum_j d_j a_ij = -2 Lambda |z|^gamma z_i
///   c(z) = sum_ij d_ij a_ij = -2 Lambda (gamma+3) |z|^gamma
/// a is symmetric PSD with a(z) z = 0 and trace a = 2 Lambda |z|^(gamma+2).
struct LandauCoefficients {
  double lambda = 1.0;
  double gamma = 1.0;

  /// Symmetric matrix entries ordered xx, yy, zz, xy, xz, yz.
  std::array<double, 6> a(const Vec3& z) const;
  Vec3 b(const Vec3& z) const;
  double c(const Vec3& z) const;

  /// a(z) applied to a vector.
  Vec3 apply_a(const Vec3& z, const Vec3& w) const;
};

enum class LandauBackend {
  bilinear,      ///< A: Q_L(g,h) = sum_ij (a_ij * g) d_ij h - (c * g) h
  conservative,  ///< B: antisymmetrized pair-flux form, g = h only
};

struct LandauOptions {
  double prune_rel = 1e-14;  ///< activity threshold relative to max |field|
};

/// Backend A. Discrete convolutions are direct midpoint sums over the grid;
/// the Hessian of h uses 4th-order central differences with zero extension.
GridField q_landau_bilinear(const GridField& g, const GridField& h, const KernelConfig& k,
                            const LandauOptions& opt = {});

/// Backend A with the Hessian and value of h taken from its closed form.
/// Used by the operator-level order studies on analytic test fields.
GridField q_landau_bilinear_analytic(const GridField& g_samples, const GaussianMixture& h,
                                     const KernelConfig& k, const LandauOptions& opt = {});

/// Backend B: Q = div F with the pair flux
///   F_i = h^3 sum_j a(v_i - v_j) [f_j (Df)_i - f_i (Df)_j]
/// over nodes at least one layer inside the box, central differences
/// throughout. Conserves mass, momentum and energy to round-off for any f:
/// the momentum/energy sums antisymmetrize pairwise and a(z) z = 0 kills the
/// energy term exactly.
GridField q_landau_conservative(const GridField& f, const KernelConfig& k,
                                const LandauOptions& opt = {});

/// Dispatcher. conservative with distinct g, h values throws ConfigError.
GridField q_landau(const GridField& g, const GridField& h, const KernelConfig& k,
                   LandauBackend backend, const LandauOptions& opt = {});

}  // namespace boltz

#endif
