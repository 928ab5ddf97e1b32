#ifndef BOLTZ_SUITES_HPP
#define BOLTZ_SUITES_HPP

#include <string>
#include <vector>

#include "boltz/kernel.hpp"

namespace boltz {

/// Randomized property suites shared by `selftest` and the acceptance
/// harness. Each is deterministic for a fixed seed and returns the number of
/// violations (0 = pass).

/// Energy/momentum invariance of post_collision on random (v, v*, sigma),
/// tolerance 1e-12 relative.
long suite_post_collision(unsigned long seed, long samples);

/// Pinching bound K^-1 <= theta^(1+2s) sin(theta) b(cos theta) <= K on
/// sampled theta (exact equality for the model profile).
long suite_pinch(const KernelConfig& k, long samples);

/// <v'>^2p moment inequality on random velocities/angles, |v|,|v*| <= 5.
long suite_primededuct(const KernelConfig& k, unsigned long seed, long samples,
                       const std::vector<double>& p_values);

/// Angular moment bound Theta(v,v*) on random pairs.
long suite_theta_bound(const KernelConfig& k, unsigned long seed, long samples,
                       const std::vector<double>& p_values);

/// Landau moment inequality on random non-negative mixtures (conservative
/// backend, Lambda = 1).
long suite_landau_moment(const KernelConfig& k, unsigned long seed, int fields,
                         const std::vector<double>& p_values);

/// Discrete interpolation inequality on random smooth fields.
long suite_interp_inequality(const KernelConfig& k, unsigned long seed, int fields,
                             const std::vector<double>& lambdas);

/// eps-norm sandwich on random fields.
long suite_sandwich(const KernelConfig& k, unsigned long seed, int fields, double eps);

/// Monotonicity in l of the bookkeeping weight functions.
long suite_weight_monotonicity();

}  // namespace boltz

#endif
