#ifndef BOLTZ_CONFIG_HPP
#define BOLTZ_CONFIG_HPP

#include <string>
#include <vector>

#include "boltz/analytic.hpp"
#include "boltz/kernel.hpp"
#include "boltz/solver.hpp"

namespace boltz {

/// Run configuration, read from a flat `section.key = value` text file
/// (UTF-8, '#' comments). Unknown keys are rejected. All floating point
/// output is written at 17 significant digits so round-trips are exact.
struct RunConfig {
  KernelConfig kernel;
  bool lambda_calibrate = true;  ///< kernel.lambda = "calibrate"

  int grid_N = 16;
  double grid_L = 7.0;

  SolverConfig solver;

  // initial datum
  std::string init_kind = "maxwellian";  ///< maxwellian | gaussian-mixture | anisotropic
  double init_rho = 1.0;
  Vec3 init_u;
  double init_T = 1.0;
  Vec3 init_T_axis{1.0, 1.0, 1.0};   ///< per-axis temperatures for "anisotropic"
  double init_sep = 1.2;             ///< mean separation for "gaussian-mixture"

  // study block
  std::vector<double> study_eps_list{0.4, 0.283, 0.2, 0.141, 0.1};
  double study_eps_ref = 0.025;
  double study_l = 2.0;
  double study_T = 0.5;

  // io block
  std::string io_output_dir = ".";
  bool io_binary = false;

  unsigned long seed = 20240501;

  static RunConfig parse_file(const std::string& path);
  static RunConfig parse_text(const std::string& text);
  /// Applies "section.key=value" overrides (same keys as the file).
  void apply_override(const std::string& key, const std::string& value);
  std::string serialize() const;

  /// The analytic initial datum described by the init block.
  GaussianMixture initial_mixture() const;
  VelocityGrid make_grid() const { return VelocityGrid(grid_N, grid_L); }
  void validate() const;
};

}  // namespace boltz

#endif
