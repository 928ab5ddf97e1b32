#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "boltz/config.hpp"
#include "boltz/error.hpp"
#include "boltz/selftest.hpp"
#include "boltz/study.hpp"
#include "boltz/weights.hpp"

namespace fs = std::filesystem;
using namespace boltz;

namespace {

RunConfig load_config(const std::string& path, const std::vector<std::string>& sets) {
  RunConfig cfg = path.empty() ? RunConfig{} : RunConfig::parse_file(path);
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.apply_override(kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

void ensure_lambda(RunConfig& cfg) {
  if (!cfg.lambda_calibrate) return;
  std::cerr << "calibrating Lambda...\n";
  std::vector<GaussianMixture> family{GaussianMixture::isotropic(1.0, {0, 0, 0}, 1.0)};
  CalibrationReport rep;
  cfg.kernel.lambda = calibrate_lambda({0.2, 0.1}, family, cfg.make_grid(), cfg.kernel,
                                       cfg.solver.collide, &rep);
  std::cerr << "Lambda = " << cfg.kernel.lambda << " (spread " << 100.0 * rep.spread << "%)\n";
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.io_output_dir);
  return (fs::path(cfg.io_output_dir) / name).string();
}

int cmd_simulate(RunConfig cfg, bool picard_mode) {
  ensure_lambda(cfg);
  Distribution f0 = cfg.initial_mixture().sample(cfg.make_grid());
  Trajectory traj;
  std::vector<double> gaps;
  if (picard_mode || cfg.solver.scheme == Scheme::picard) {
    auto [t, g] = picard_solve(f0, cfg.solver, cfg.kernel);
    traj = std::move(t);
    gaps = std::move(g);
  } else {
    traj = simulate(f0, cfg.solver, cfg.kernel);
  }
  traj.write_csv(out_path(cfg, "diagnostics.csv"));
  write_field(traj.final_field, out_path(cfg, cfg.io_binary ? "final_field.bin" : "final_field.txt"),
              cfg.io_binary);
  int si = 0;
  for (const auto& [t, f] : traj.snapshots) {
    char name[64];
    std::snprintf(name, sizeof name, "snapshot_%04d.%s", si++, cfg.io_binary ? "bin" : "txt");
    write_field(f, out_path(cfg, name), cfg.io_binary);
  }
  const auto& first = traj.rows.front();
  const auto& last = traj.rows.back();
  std::printf("t = %.6g  mass drift %.3e  energy drift %.3e  entropy %.8g -> %.8g\n", last.t,
              (last.mass - first.mass) / first.mass, (last.energy - first.energy) / first.energy,
              first.entropy, last.entropy);
  if (!gaps.empty()) {
    std::printf("picard gaps:");
    for (double g : gaps) std::printf(" %.3e", g);
    std::printf("\n");
  }
  return 0;
}

int cmd_grazing_order(RunConfig cfg) {
  ensure_lambda(cfg);
  StudyReport rep = grazing_order_study(cfg.initial_mixture(), cfg.make_grid(),
                                        cfg.study_eps_list, cfg.kernel, cfg.solver.collide);
  StudyReport::write_csv({rep}, out_path(cfg, "grazing_order.csv"));
  StudyReport::write_json({rep}, out_path(cfg, "grazing_order.json"));
  std::printf("grazing order: slope %.4f (expected %.4f +- %.2f), max residual %.4f : %s\n",
              rep.fit.slope, rep.expected_slope, rep.slope_tol, rep.fit.max_residual,
              rep.pass ? "pass" : "FAIL");
  return rep.pass ? 0 : 3;
}

int cmd_solution_order(RunConfig cfg) {
  ensure_lambda(cfg);
  Distribution f0 = cfg.initial_mixture().sample(cfg.make_grid());
  auto reports = solution_order_study(f0, cfg.study_T, cfg.study_eps_list, cfg.study_eps_ref,
                                      {Mode::compensated, Mode::cutoff_only}, cfg.study_l,
                                      cfg.solver, cfg.kernel);
  StudyReport::write_csv(reports, out_path(cfg, "solution_order.csv"));
  StudyReport::write_json(reports, out_path(cfg, "solution_order.json"));
  bool all = true;
  for (const auto& r : reports) {
    std::printf("%s: slope %.4f (expected %.4f +- %.2f) : %s\n", r.mode.c_str(), r.fit.slope,
                r.expected_slope, r.slope_tol, r.pass ? "pass" : "FAIL");
    all = all && r.pass;
  }
  // the headline comparison: compensated error below cutoff-only error everywhere
  if (reports.size() == 2)
    for (std::size_t i = 0; i < reports[0].eps.size(); ++i)
      if (reports[0].error[i] >= reports[1].error[i]) {
        std::printf("compensated error not below cutoff-only at eps = %g\n", reports[0].eps[i]);
        all = false;
      }
  return all ? 0 : 3;
}

int cmd_calibrate(RunConfig cfg) {
  std::vector<GaussianMixture> family{
      GaussianMixture::isotropic(1.0, {0, 0, 0}, 1.0),
      GaussianMixture({GaussianMixture::Component{0.6, {0.9, 0, 0}, {1.0, 0.8, 0.9}},
                       GaussianMixture::Component{0.4, {-0.9, 0.3, 0}, {0.7, 1.1, 1.0}}})};
  std::vector<double> eps_list;
  for (double e : cfg.study_eps_list)
    if (e <= 0.3) eps_list.push_back(e);
  if (eps_list.size() < 2) eps_list = {0.2, 0.1};
  CalibrationReport rep;
  const double lam = calibrate_lambda(eps_list, family, cfg.make_grid(), cfg.kernel,
                                      cfg.solver.collide, &rep);
  std::printf("Lambda = %.10g\n", lam);
  for (std::size_t i = 0; i < rep.eps.size(); ++i)
    std::printf("  eps %-8g lambda %.8g residual %.4e\n", rep.eps[i], rep.lambda_per_eps[i],
                rep.residual_per_eps[i]);
  std::printf("cross-eps spread %.3f%%\n", 100.0 * rep.spread);
  return 0;
}

int cmd_hypothesis(RunConfig cfg, int N, double l) {
  const WeightParams p{cfg.kernel.s, cfg.kernel.gamma};
  const double A2 = angular_a2(cfg.kernel);
  std::printf("s = %g, gamma = %g, K = %g, A2 = %.8g\n", p.s, p.gamma, cfg.kernel.K, A2);
  std::printf("phi(%d, %g)    = %.8g\n", N, l, phi(N, l, p));
  std::printf("phi_s(%g)     = %.8g\n", l, phi_s(l, p));
  std::printf("psi(%d, %g)    = %.8g\n", N, l, psi(N, l, p));
  std::printf("varphi(%d, %g) = %.8g\n", N, l, varphi(N, l, p));
  std::printf("x(%g) = %.8g  y(%g) = %.8g  z(%g) = %.8g  u(%d,%g) = %.8g\n", l, aux_x(l, p), l,
              aux_y(l, p), l, aux_z(l, p), N, l, aux_u(N, l, p));
  if (N >= 1) std::printf("rho(%d, %g) = %.8g\n", N, l, rho(N, l, p));
  for (auto which : {Theorem::main3, Theorem::main4}) {
    const char* name = which == Theorem::main3 ? "main3" : "main4";
    const auto chk = theorem_conditions(l, which, p, cfg.kernel.K, A2);
    std::printf("%s at l = %g: %s\n", name, l, chk.describe().c_str());
    std::printf("%s minimal l (0.25 grid): %g\n", name, minimal_l(which, p, cfg.kernel.K, A2));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compensated cutoff Boltzmann/Landau solver and order-study harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;
  int hyp_N = 0;
  double hyp_l = 3.0;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("config", config_path, "run configuration file");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--set", sets, "override: section.key=value (repeatable)");
  };

  auto* sim = app.add_subcommand("simulate", "integrate d f/dt = M^eps(f,f)");
  add_common(sim, true);
  auto* pic = app.add_subcommand("picard", "solve by Picard iteration");
  add_common(pic, true);
  auto* gro = app.add_subcommand("grazing-order", "operator-level order study");
  add_common(gro, true);
  auto* sol = app.add_subcommand("solution-order", "solution-level order study");
  add_common(sol, true);
  auto* cal = app.add_subcommand("calibrate-lambda", "fit the Landau strength constant");
  add_common(cal, false);
  auto* hyp = app.add_subcommand("hypothesis", "weight functions and theorem side conditions");
  add_common(hyp, false);
  hyp->add_option("--N", hyp_N, "regularity order");
  hyp->add_option("--l", hyp_l, "weight");
  auto* st = app.add_subcommand("selftest", "run the randomized property suites");
  add_common(st, false);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path, sets);
    if (sim->parsed()) return cmd_simulate(cfg, false);
    if (pic->parsed()) return cmd_simulate(cfg, true);
    if (gro->parsed()) return cmd_grazing_order(cfg);
    if (sol->parsed()) return cmd_solution_order(cfg);
    if (cal->parsed()) return cmd_calibrate(cfg);
    if (hyp->parsed()) return cmd_hypothesis(cfg, hyp_N, hyp_l);
    if (st->parsed()) {
      const int failures = selftest(cfg.seed, std::cout);
      return failures == 0 ? 0 : 3;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
