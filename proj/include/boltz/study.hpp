#ifndef BOLTZ_STUDY_HPP
#define BOLTZ_STUDY_HPP

#include <string>
#include <utility>
#include <vector>

#include "boltz/analytic.hpp"
#include "boltz/collision.hpp"
#include "boltz/grid.hpp"
#include "boltz/solver.hpp"

namespace boltz {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;  ///< max |log e - fit| over the points
};

/// Ordinary least squares on (log eps, log e).
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points);

/// F^eps_R = (f_eps - f_ref) / eps^(3-2s).
GridField error_function(const GridField& f_eps, const GridField& f_ref, double eps, double s);

struct StudyReport {
  std::vector<double> eps;
  std::vector<double> error;
  std::string mode;  ///< "operator", "compensated", "cutoff-only"
  SlopeFit fit;
  double expected_slope = 0.0;
  double slope_tol = 0.0;
  bool pass = false;
  std::string reference_desc;

  /// CSV rows eps,error,mode (one file may hold several reports).
  static void write_csv(const std::vector<StudyReport>& reports, const std::string& path);
  /// JSON summary {slope, intercept, max_residual, expected_slope, pass} per report.
  static void write_json(const std::vector<StudyReport>& reports, const std::string& path);
};

/// Operator-level grazing order: e(eps) = ||eps^(2-2s) Q_L(f,f) - Q_eps(f,f)||_{L^1(grid)}
/// over a decreasing eps list, fitted slope expected 3-2s. The analytic field
/// variant evaluates the collision integrand on the closed-form f.
/// Throws NumericError if any e(eps) falls below 1e3 * machine eps * scale.
StudyReport grazing_order_study(const GaussianMixture& f, const VelocityGrid& grid,
                                const std::vector<double>& eps_list, const KernelConfig& k,
                                const CollisionOptions& opt = {}, double slope_tol = 0.3);

/// Same study on grid data only (trilinear/hybrid pipeline); used for
/// cross-checks of the grid operators at small N.
StudyReport grazing_order_study(const Distribution& f, const std::vector<double>& eps_list,
                                const KernelConfig& k, const CollisionOptions& opt = {},
                                double slope_tol = 0.3);

/// Solution-level order study. Reference = compensated run at eps_ref
/// (its own model error is O(eps_ref^(3-2s)), at least 4^(3-2s) below the
/// smallest measured error). All runs share grid, dt and T. For each eps and
/// mode, e(eps) = ||f^eps(T) - f_ref(T)||_{L^1_{2l}}.
/// Expected slopes: compensated 3-2s, cutoff-only 2-2s.
std::vector<StudyReport> solution_order_study(const Distribution& f0, double T,
                                              const std::vector<double>& eps_list, double eps_ref,
                                              const std::vector<Mode>& modes, double l,
                                              const SolverConfig& base_cfg, const KernelConfig& k);

struct CalibrationReport {
  double lambda = 0.0;
  std::vector<double> eps;
  std::vector<double> lambda_per_eps;
  std::vector<double> residual_per_eps;  ///< at the joint optimum
  double spread = 0.0;                   ///< max relative deviation across eps
};

/// Fits Lambda minimizing sum over (field, eps) of
/// ||eps^(2-2s) Lambda Q_L^{Lambda=1}(f,f) - Q_eps(f,f)||^2_{L^1(grid)}.
/// family: analytic test fields (isotropic Gaussians / mixtures).
/// Throws NumericError if the per-eps fits disagree by more than 5% or the
/// residuals fail to decrease along the (decreasing) eps list.
double calibrate_lambda(const std::vector<double>& eps_list,
                        const std::vector<GaussianMixture>& family, const VelocityGrid& grid,
                        const KernelConfig& k, const CollisionOptions& opt = {},
                        CalibrationReport* report = nullptr);

}  // namespace boltz

#endif
