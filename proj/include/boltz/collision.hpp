#ifndef BOLTZ_COLLISION_HPP
#define BOLTZ_COLLISION_HPP

#include <vector>

#include "boltz/analytic.hpp"
#include "boltz/grid.hpp"
#include "boltz/kernel.hpp"
#include "boltz/landau.hpp"
#include "boltz/sigma_table.hpp"

namespace boltz {

/// Quadrature and evaluation controls for the bilinear collision sums.
struct CollisionOptions {
  int polar_nodes_per_panel = 6;
  int panels_per_decade = 2;
  int band_panels_per_decade = 1;  ///< grazing-band polar density (log-GL is
                                   ///< spectrally accurate there)
  int n_azimuth = 8;

  /// Extra polar panel breakpoints (radians). Sweep studies insert the full
  /// list of cutoff angles here so that every member shares sigma nodes on
  /// the common part of the range and quadrature error cancels in
  /// differences.
  std::vector<double> breakpoints;

  /// sigma nodes with |v' - v| = 2 r sin(theta/2) below hybrid_switch * h use
  /// cubic B-spline evaluation of the fields instead of trilinear
  /// interpolation. Near the grazing limit the trilinear error does not
  /// average out over the azimuthal ring, so the plain scheme cannot resolve
  /// the O(theta^2) cancellation; the C^2 spline restores it. Set to 0 for
  /// the plain trilinear evaluation everywhere.
  double hybrid_switch = 2.0;

  /// Nodes with |field| below prune_rel * max|field| are treated as inactive;
  /// pairs outside the collision-energy reach of the active supports are
  /// skipped and the result is hard zero there (consistent with zero
  /// extension; the skipped terms are below round-off relevance).
  double prune_rel = 1e-14;
};

/// Gain term Q^{eps+}(g,h)(v) = sum over pairs and sigma nodes of
/// w b^eps(cos theta) |v - v*|^gamma g(v*') h(v') h^3, off-grid values by
/// interpolation (trilinear, or hybrid spline near the diagonal).
GridField q_gain(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                 const CollisionOptions& opt = {});

/// Loss coefficient L(g)(v) = A_eps h^3 sum_{v*} |v - v*|^gamma g(v*);
/// Q^{eps-}(g,h) = L(g) h pointwise.
GridField q_loss_coefficient(const GridField& g, double eps, const KernelConfig& k,
                             const CollisionOptions& opt = {});

/// Cutoff operator Q^eps(g,h) = gain - loss, evaluated fused (the loss uses
/// the sigma table's own b^eps mass so the cancellation happens per node).
GridField q_cutoff(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                   const CollisionOptions& opt = {});

/// Grazing part Q_eps(g,h): kernel b 1_{sin(theta/2) <= eps}, polar range
/// [theta_min, 2 asin(eps)]. Requires the band to hold >= 16 polar nodes.
GridField q_grazing(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                    const CollisionOptions& opt = {});

/// Band operator restricted to sin(theta/2) in [eps_lo, eps_hi]; q_grazing is
/// the special case eps_lo at the quadrature floor. Used for band-additivity
/// checks.
GridField q_band(const GridField& g, const GridField& h, double eps_lo, double eps_hi,
                 const KernelConfig& k, const CollisionOptions& opt = {});

/// Compensated operator M^eps(g,h) = Q^eps(g,h) + eps^(2-2s) Q_L(g,h).
/// The Landau part uses the conservative backend when g and h coincide in
/// value, the bilinear backend otherwise.
GridField m_eps(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                const CollisionOptions& opt = {});

/// Defect field Upsilon(f) = (1/eps) [Q_L(f,f) - eps^(2s-2) Q_eps(f,f)].
GridField upsilon(const GridField& f, double eps, const KernelConfig& k,
                  const CollisionOptions& opt = {});

/// Analytic-field variants: the collision integrand evaluates g and h through
/// their closed forms, so the only discretization left is the sigma/velocity
/// quadrature (superalgebraic on these fields). Used by the operator-level
/// order studies and the Lambda calibration.
GridField q_gain_analytic(const GaussianMixture& g, const GaussianMixture& h, double eps,
                          const VelocityGrid& grid, const KernelConfig& k,
                          const CollisionOptions& opt = {});
GridField q_cutoff_analytic(const GaussianMixture& g, const GaussianMixture& h, double eps,
                            const VelocityGrid& grid, const KernelConfig& k,
                            const CollisionOptions& opt = {});
GridField q_grazing_analytic(const GaussianMixture& g, const GaussianMixture& h, double eps,
                             const VelocityGrid& grid, const KernelConfig& k,
                             const CollisionOptions& opt = {});

}  // namespace boltz

#endif
