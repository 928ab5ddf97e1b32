#ifndef BOLTZ_SOLVER_HPP
#define BOLTZ_SOLVER_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "boltz/collision.hpp"
#include "boltz/grid.hpp"
#include "boltz/kernel.hpp"

namespace boltz {

enum class Scheme { euler, rk4, picard };
enum class Mode { cutoff_only, compensated, grazing_reference };

struct PicardConfig {
  int outer_iters = 10;
  double inner_dt = 0.0;  ///< 0 = choose from the stability bound
  double tol_l1 = 1e-5;
  double gap_l = 2.0;     ///< weight of the L^1_l iterate gaps
  bool lagged_gain = false;  ///< gain applied to the previous iterate
};

struct SolverConfig {
  Scheme scheme = Scheme::rk4;
  double dt = 0.0;  ///< 0 = choose from the stability bound
  double T = 1.0;
  double eps = 0.2;
  Mode mode = Mode::compensated;
  PicardConfig picard;
  int record_every = 1;
  double diag_q = 2.0;  ///< weight of the recorded L^1_q norm
  double diag_l = 0.0;  ///< weight of the recorded L^2_l norm
  int snapshot_every = 0;  ///< 0 = no field snapshots
  CollisionOptions collide;

  void validate() const;
};

struct DiagnosticsRow {
  double t, mass, px, py, pz, energy, entropy, l1_q, l2_l, min_f;
};

struct Trajectory {
  std::vector<DiagnosticsRow> rows;
  GridField final_field;
  std::vector<std::pair<double, GridField>> snapshots;
  bool negativity_warned = false;
  double worst_negative = 0.0;  ///< most negative min_f / max_f seen

  /// CSV: header t,mass,px,py,pz,energy,entropy,l1_q,l2_l,min_f; one row per
  /// record interval, 17 significant digits.
  void write_csv(const std::string& path) const;
};

/// Spec heuristic: c_cfl / (A_eps ||f||_{L^1_gamma}
///   + eps^(2-2s) Lambda ||f||_{L^1_{gamma+2}} / h^2), c_cfl = 0.5.
double dt_stable_heuristic(const GridField& f, double eps, const KernelConfig& k);

/// Stricter explicit-stability bound from the maximum loss rate over the
/// active nodes plus the Landau diffusion rate. Used when dt = 0 (auto).
double dt_stable_strict(const GridField& f, double eps, Mode mode, const KernelConfig& k);

/// One explicit step (euler or classical RK4) of d f/dt = rhs(f).
/// Throws NumericError on NaN/Inf in the result.
GridField step(const GridField& f, double dt,
               const std::function<GridField(const GridField&)>& rhs, Scheme scheme);

/// Right-hand side for the configured mode:
///   cutoff-only:       Q^eps(f,f)
///   compensated:       Q^eps(f,f) + eps^(2-2s) Q_L(f,f) (conservative backend)
///   grazing-reference: Q^eps(f,f) + Q_eps(f,f)
GridField mode_rhs(const GridField& f, const SolverConfig& cfg, const KernelConfig& k);

/// Explicit time integration with diagnostics every record interval.
/// Emits a warning (not an error) if dt exceeds the stability heuristic or if
/// min f drops below -1e-6 max f.
Trajectory simulate(const Distribution& f0, const SolverConfig& cfg, const KernelConfig& k);

/// Picard iteration (compensated mode only): iterates
///   d f^n/dt = Q^eps(f^{n-1}, f^n) + eps^(2-2s) Q_L(f^{n-1}, f^n),
/// inner integration explicit Euler, f^0(t) = f0. With lagged_gain the gain
/// is applied to f^{n-1} (the positivity-preserving construction). Returns
/// the trajectory of the converged iterate and the sup-in-time L^1_l gaps.
/// Throws NumericError if the gaps fail to decrease over three consecutive
/// iterations.
std::pair<Trajectory, std::vector<double>> picard_solve(const Distribution& f0,
                                                        const SolverConfig& cfg,
                                                        const KernelConfig& k);

}  // namespace boltz

#endif
