#include "boltz/study.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

#include <nlohmann/json.hpp>

#include "boltz/error.hpp"
#include "boltz/norms.hpp"

namespace boltz {

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw ConfigError("slope_fit: need at least 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(points.size());
  for (const auto& [e, v] : points) {
    const double x = std::log(e), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  SlopeFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  for (const auto& [e, v] : points) {
    const double r = std::fabs(std::log(v) - (fit.intercept + fit.slope * std::log(e)));
    fit.max_residual = std::fmax(fit.max_residual, r);
  }
  return fit;
}

GridField error_function(const GridField& f_eps, const GridField& f_ref, double eps, double s) {
  if (!(f_eps.grid() == f_ref.grid()))
    throw ConfigError("error_function: fields on different grids");
  GridField out(f_eps.grid());
  const double scale = std::pow(eps, 3.0 - 2.0 * s);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (f_eps[i] - f_ref[i]) / scale;
  return out;
}

namespace {

void require_eps_list(const std::vector<double>& eps_list, std::size_t min_count) {
  if (eps_list.size() < min_count)
    throw ConfigError("study: need at least " + std::to_string(min_count) + " eps values");
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] < eps_list[i - 1]))
      throw ConfigError("study: eps list must be strictly decreasing");
}

void check_signal(double err, double scale) {
  if (err < 1e3 * std::numeric_limits<double>::epsilon() * scale)
    throw NumericError("study: error signal below quadrature noise floor; refine the grid");
}

StudyReport finish_operator_report(std::vector<double> eps, std::vector<double> err, double s,
                                   double slope_tol, const std::string& ref_desc) {
  StudyReport rep;
  rep.eps = std::move(eps);
  rep.error = std::move(err);
  rep.mode = "operator";
  rep.expected_slope = 3.0 - 2.0 * s;
  rep.slope_tol = slope_tol;
  rep.reference_desc = ref_desc;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < rep.eps.size(); ++i) pts.emplace_back(rep.eps[i], rep.error[i]);
  rep.fit = slope_fit(pts);
  rep.pass = std::fabs(rep.fit.slope - rep.expected_slope) <= slope_tol;
  return rep;
}

}  // namespace

StudyReport grazing_order_study(const GaussianMixture& f, const VelocityGrid& grid,
                                const std::vector<double>& eps_list, const KernelConfig& k,
                                const CollisionOptions& opt, double slope_tol) {
  require_eps_list(eps_list, 4);
  k.validate();
  Distribution fd = f.sample(grid);
  LandauOptions lopt;
  lopt.prune_rel = opt.prune_rel;
  GridField ql = q_landau_bilinear_analytic(fd, f, k, lopt);

  std::vector<double> errs;
  for (double eps : eps_list) {
    GridField qe = q_grazing_analytic(f, f, eps, grid, k, opt);
    const double scale = std::pow(eps, 2.0 - 2.0 * k.s);
    GridField diff(grid);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = scale * ql[i] - qe[i];
    const double err = weighted_l1(diff, 0.0);
    check_signal(err, scale * weighted_l1(ql, 0.0));
    errs.push_back(err);
    std::cerr << "  grazing-order eps=" << eps << " error=" << err << "\n";
  }
  return finish_operator_report(eps_list, errs, k.s, slope_tol,
                                "analytic-field quadrature of Q_eps vs eps^(2-2s) Q_L");
}

StudyReport grazing_order_study(const Distribution& f, const std::vector<double>& eps_list,
                                const KernelConfig& k, const CollisionOptions& opt,
                                double slope_tol) {
  require_eps_list(eps_list, 4);
  k.validate();
  LandauOptions lopt;
  lopt.prune_rel = opt.prune_rel;
  GridField ql = q_landau_bilinear(f, f, k, lopt);
  std::vector<double> errs;
  for (double eps : eps_list) {
    GridField qe = q_grazing(f, f, eps, k, opt);
    const double scale = std::pow(eps, 2.0 - 2.0 * k.s);
    GridField diff(f.grid());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = scale * ql[i] - qe[i];
    const double err = weighted_l1(diff, 0.0);
    check_signal(err, scale * weighted_l1(ql, 0.0));
    errs.push_back(err);
  }
  return finish_operator_report(eps_list, errs, k.s, slope_tol,
                                "grid-field quadrature of Q_eps vs eps^(2-2s) Q_L");
}

std::vector<StudyReport> solution_order_study(const Distribution& f0, double T,
                                              const std::vector<double>& eps_list, double eps_ref,
                                              const std::vector<Mode>& modes, double l,
                                              const SolverConfig& base_cfg,
                                              const KernelConfig& k) {
  require_eps_list(eps_list, 4);
  if (!(eps_ref <= eps_list.back() / 4.0))
    throw ConfigError("solution_order_study: eps_ref must be <= min(eps)/4");

  // shared polar breakpoints so all runs integrate over nested sigma nodes
  SolverConfig cfg = base_cfg;
  cfg.T = T;
  cfg.collide.breakpoints.clear();
  for (double e : eps_list) cfg.collide.breakpoints.push_back(2.0 * std::asin(e));
  cfg.collide.breakpoints.push_back(2.0 * std::asin(eps_ref));

  // one dt for every run: the stiffest member is the reference
  if (cfg.dt == 0.0) cfg.dt = dt_stable_strict(f0, eps_ref, Mode::compensated, k);

  std::cerr << "solution-order: dt=" << cfg.dt << ", steps=" << int(std::ceil(T / cfg.dt))
            << " per run\n";

  SolverConfig ref_cfg = cfg;
  ref_cfg.eps = eps_ref;
  ref_cfg.mode = Mode::compensated;
  Trajectory ref;
  try {
    ref = simulate(f0, ref_cfg, k);
  } catch (const NumericError& e) {
    throw NumericError(std::string("solution_order_study: reference run failed: ") + e.what());
  }
  std::cerr << "  reference run done (eps_ref=" << eps_ref << ")\n";

  std::vector<StudyReport> reports;
  for (Mode mode : modes) {
    StudyReport rep;
    rep.mode = mode == Mode::compensated ? "compensated" : "cutoff-only";
    rep.expected_slope = mode == Mode::compensated ? 3.0 - 2.0 * k.s : 2.0 - 2.0 * k.s;
    rep.slope_tol = 0.4;
    rep.reference_desc = "compensated run at eps_ref=" + std::to_string(eps_ref);
    for (double eps : eps_list) {
      SolverConfig run_cfg = cfg;
      run_cfg.eps = eps;
      run_cfg.mode = mode;
      Trajectory tr = simulate(f0, run_cfg, k);
      GridField diff = tr.final_field;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= ref.final_field[i];
      const double err = weighted_l1(diff, 2.0 * l);
      rep.eps.push_back(eps);
      rep.error.push_back(err);
      std::cerr << "  " << rep.mode << " eps=" << eps << " error=" << err << "\n";
    }
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < rep.eps.size(); ++i) pts.emplace_back(rep.eps[i], rep.error[i]);
    rep.fit = slope_fit(pts);
    rep.pass = std::fabs(rep.fit.slope - rep.expected_slope) <= rep.slope_tol;
    reports.push_back(std::move(rep));
  }
  return reports;
}

double calibrate_lambda(const std::vector<double>& eps_list,
                        const std::vector<GaussianMixture>& family, const VelocityGrid& grid,
                        const KernelConfig& k, const CollisionOptions& opt,
                        CalibrationReport* report) {
  require_eps_list(eps_list, 2);
  for (double e : eps_list)
    if (e > 0.3 + 1e-12)
      throw ConfigError("calibrate_lambda: eps values must be <= 0.3 (grazing regime)");
  if (family.empty()) throw ConfigError("calibrate_lambda: empty test family");

  KernelConfig unit = k;
  unit.lambda = 1.0;
  LandauOptions lopt;
  lopt.prune_rel = opt.prune_rel;

  // Per (field, eps): Q_L with Lambda = 1 (analytic Hessian) and the grazing
  // part. The objective sum of ||eps^{2-2s} Lambda QL1 - Qe||^2_{L1} is convex
  // in Lambda; minimize per eps (for the stability check) and jointly.
  struct Term {
    GridField ql1, qe;
    double scale;
  };
  std::vector<std::vector<Term>> terms(eps_list.size());
  for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
    for (const auto& f : family) {
      Term t;
      Distribution fd = f.sample(grid);
      t.ql1 = q_landau_bilinear_analytic(fd, f, unit, lopt);
      t.qe = q_grazing_analytic(f, f, eps_list[ei], grid, unit, opt);
      t.scale = std::pow(eps_list[ei], 2.0 - 2.0 * k.s);
      terms[ei].push_back(std::move(t));
    }
  }

  auto objective = [&](double lambda, const std::vector<std::size_t>& which) {
    double acc = 0.0;
    for (std::size_t ei : which)
      for (const auto& t : terms[ei]) {
        GridField diff(grid);
        for (std::size_t i = 0; i < diff.size(); ++i)
          diff[i] = t.scale * lambda * t.ql1[i] - t.qe[i];
        const double n1 = weighted_l1(diff, 0.0);
        acc += n1 * n1;
      }
    return acc;
  };

  auto minimize = [&](const std::vector<std::size_t>& which) {
    double lo = 1e-4, hi = 50.0;
    for (int it = 0; it < 200; ++it) {
      const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (objective(m1, which) < objective(m2, which))
        hi = m2;
      else
        lo = m1;
      if (hi - lo < 1e-10 * hi) break;
    }
    return 0.5 * (lo + hi);
  };

  CalibrationReport rep;
  rep.eps = eps_list;
  std::vector<std::size_t> all;
  for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
    all.push_back(ei);
    rep.lambda_per_eps.push_back(minimize({ei}));
  }
  rep.lambda = minimize(all);
  for (std::size_t ei = 0; ei < eps_list.size(); ++ei)
    rep.residual_per_eps.push_back(std::sqrt(objective(rep.lambda, {ei})));

  double spread = 0.0;
  for (double le : rep.lambda_per_eps)
    spread = std::fmax(spread, std::fabs(le - rep.lambda) / rep.lambda);
  rep.spread = spread;

  // residuals must shrink along the (decreasing) eps list
  bool monotone = true;
  for (std::size_t ei = 1; ei < eps_list.size(); ++ei)
    if (rep.residual_per_eps[ei] > rep.residual_per_eps[ei - 1]) monotone = false;

  if (report) *report = rep;
  if (spread > 0.05)
    throw NumericError("calibrate_lambda: fits at different eps disagree by " +
                       std::to_string(100.0 * spread) + "% (> 5%)");
  if (!monotone)
    throw NumericError("calibrate_lambda: fit residuals not monotone across the eps list");
  return rep.lambda;
}

void StudyReport::write_csv(const std::vector<StudyReport>& reports, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("study: cannot open " + path);
  out << "eps,error,mode\n";
  char buf[160];
  for (const auto& r : reports)
    for (std::size_t i = 0; i < r.eps.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s\n", r.eps[i], r.error[i], r.mode.c_str());
      out << buf;
    }
}

void StudyReport::write_json(const std::vector<StudyReport>& reports, const std::string& path) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) {
    j.push_back({{"mode", r.mode},
                 {"slope", r.fit.slope},
                 {"intercept", r.fit.intercept},
                 {"max_residual", r.fit.max_residual},
                 {"expected_slope", r.expected_slope},
                 {"slope_tol", r.slope_tol},
                 {"pass", r.pass},
                 {"reference", r.reference_desc}});
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("study: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace boltz
