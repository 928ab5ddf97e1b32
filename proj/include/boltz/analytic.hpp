#ifndef BOLTZ_ANALYTIC_HPP
#define BOLTZ_ANALYTIC_HPP

#include <array>
#include <vector>

#include "boltz/grid.hpp"
#include "boltz/vec3.hpp"

namespace boltz {

/// Mixture of isotropic/anisotropic Gaussians with closed-form value,
/// gradient and Hessian. Used by the operator-level order studies, where
/// evaluating the collision integrand on the exact field removes all
/// interpolation error from the measurement.
class GaussianMixture {
 public:
  struct Component {
    double weight = 1.0;  ///< mass of the component
    Vec3 mean;
    Vec3 temps{1.0, 1.0, 1.0};  ///< per-axis temperatures (variances)
  };

  GaussianMixture() = default;
  explicit GaussianMixture(std::vector<Component> comps);

  /// Single isotropic Gaussian of mass rho, mean u, temperature T.
  static GaussianMixture isotropic(double rho, const Vec3& u, double T);

  double operator()(const Vec3& v) const;
  Vec3 gradient(const Vec3& v) const;
  std::array<double, 6> hessian(const Vec3& v) const;  ///< xx, yy, zz, xy, xz, yz

  /// Smallest radius R with value(v) <= cut * peak for all |v| >= R.
  double support_radius(double cut = 1e-14) const;

  Distribution sample(const VelocityGrid& g) const;

  const std::vector<Component>& components() const { return comps_; }

 private:
  std::vector<Component> comps_;
};

}  // namespace boltz

#endif
