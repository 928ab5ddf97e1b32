#ifndef BOLTZ_SIGMA_TABLE_HPP
#define BOLTZ_SIGMA_TABLE_HPP

#include <vector>

#include "boltz/kernel.hpp"

namespace boltz {

/// Discretization of the sphere measure dsigma for the collision integrals,
/// factored as polar x azimuthal:
///   int_{S^2} F(theta, phi) dsigma
///     ~= sum_k sum_j w_theta[k] sin(theta_k) (2 pi / n_az) F(theta_k, phi_j).
///
/// Polar nodes are Gauss-Legendre in log(theta) on panels between the given
/// breakpoints (the integrands carry the theta^{-1-2s} singularity, which the
/// log map renders smooth). Azimuthal nodes are equispaced on [0, 2 pi).
struct AngularQuadrature {
  std::vector<double> theta_nodes;
  std::vector<double> theta_weights;  ///< include sin(theta) and the log-map Jacobian
  int n_azimuth = 8;

  /// GL panels in log(theta) between consecutive breakpoints.
  static AngularQuadrature make(const std::vector<double>& breakpoints, int nodes_per_panel,
                                int n_azimuth);
  /// Single range [lo, hi] split into roughly panels_per_decade panels per decade.
  static AngularQuadrature make_range(double lo, double hi, int nodes_per_panel, int n_azimuth,
                                      int panels_per_decade = 2);
  /// Full sphere [0, pi] with plain (non-log) GL panels; used to verify that
  /// the sigma weights reproduce int dsigma = 4 pi.
  static AngularQuadrature make_full_sphere(int n_polar, int n_azimuth);
};

/// Per-node data for the sigma sum of one collision operator: local-frame
/// direction components and the combined weight w = w_theta * (2pi/n_az) * b(theta),
/// where b is the (possibly cutoff) angular profile.
struct SigmaTable {
  struct Node {
    double cos_theta, sin_theta;
    double cos_phi, sin_phi;
    double wb;     ///< quadrature weight times kernel profile value
    double w;      ///< quadrature weight alone (dsigma measure)
    double theta;
  };
  std::vector<Node> nodes;

  double total_wb = 0.0;  ///< sum of wb: the quadrature's value of int b dsigma
  double total_w = 0.0;   ///< sum of w:  the quadrature's value of int dsigma

  /// Builds the table for the given angular variant on [theta_lo, theta_hi].
  /// For cutoff/grazing variants the range should match the indicator support;
  /// profile values are evaluated with the full model b.
  static SigmaTable build(const KernelConfig& k, const AngularQuadrature& q);
};

}  // namespace boltz

#endif
