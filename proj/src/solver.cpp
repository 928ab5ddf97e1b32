#include "boltz/solver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "boltz/error.hpp"
#include "boltz/norms.hpp"

namespace boltz {

void SolverConfig::validate() const {
  if (!(dt >= 0.0)) throw ConfigError("solver: dt must be >= 0 (0 = auto)");
  if (!(T > 0.0)) throw ConfigError("solver: T must be positive");
  if (dt > 0.0 && T < dt) throw ConfigError("solver: T must be >= dt");
  if (!(picard.tol_l1 > 0.0)) throw ConfigError("solver: picard tol_l1 must be positive");
  if (record_every < 1) throw ConfigError("solver: record_every must be >= 1");
}

double dt_stable_heuristic(const GridField& f, double eps, const KernelConfig& k) {
  const double c_cfl = 0.5;
  const double A_eps = angular_constants(k, eps).A_eps;
  const double lam = k.lambda_set() ? k.lambda : 1.0;
  const double h = f.grid().h;
  const double rate = A_eps * weighted_l1(f, k.gamma) +
                      std::pow(eps, 2.0 - 2.0 * k.s) * lam * weighted_l1(f, k.gamma + 2.0) /
                          (h * h);
  return c_cfl / rate;
}

double dt_stable_strict(const GridField& f, double eps, Mode mode, const KernelConfig& k) {
  // max loss rate over the active nodes: A_eps h^3 max_v sum |v - v*|^gamma f*
  const double A_eps = angular_constants(k, eps).A_eps;
  const auto& g = f.grid();
  double mx = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mx = std::fmax(mx, std::fabs(f[i]));
  const double thr = 1e-14 * mx;
  double r_act = 0.0;
  double mass = 0.0, mean_kin = 0.0;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx)
        if (std::fabs(f[idx]) > thr) {
          const Vec3 v = g.node(ix, iy, iz);
          r_act = std::fmax(r_act, norm(v));
          mass += f[idx];
          mean_kin += std::fabs(f[idx]) * norm(v);
        }
  mass *= g.cell_volume();
  mean_kin *= g.cell_volume();
  // worst |v - v*| over active pairs is about 2 r_act
  const double loss_rate = A_eps * mass * std::pow(2.0 * r_act + 1.0, k.gamma);
  double diff_rate = 0.0;
  if (mode == Mode::compensated) {
    const double lam = k.lambda_set() ? k.lambda : 1.0;
    // Landau diffusion scale: eps^(2-2s) * 6 Lambda |2r|^(gamma+2)-moment / h^2
    diff_rate = std::pow(eps, 2.0 - 2.0 * k.s) * 6.0 * lam *
                weighted_l1(f, k.gamma + 2.0) / (g.h * g.h);
  }
  return 1.5 / (loss_rate + diff_rate + 1e-300);
}

GridField step(const GridField& f, double dt,
               const std::function<GridField(const GridField&)>& rhs, Scheme scheme) {
  GridField out;
  if (scheme == Scheme::euler) {
    GridField k1 = rhs(f);
    out = f;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += dt * k1[i];
  } else if (scheme == Scheme::rk4) {
    GridField k1 = rhs(f);
    GridField tmp = f;
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = f[i] + 0.5 * dt * k1[i];
    GridField k2 = rhs(tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = f[i] + 0.5 * dt * k2[i];
    GridField k3 = rhs(tmp);
    for (std::size_t i = 0; i < tmp.size(); ++i) tmp[i] = f[i] + dt * k3[i];
    GridField k4 = rhs(tmp);
    out = f;
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  } else {
    throw ConfigError("step: picard is not a per-step scheme");
  }
  out.check_finite("time step");
  return out;
}

GridField mode_rhs(const GridField& f, const SolverConfig& cfg, const KernelConfig& k) {
  switch (cfg.mode) {
    case Mode::cutoff_only:
      return q_cutoff(f, f, cfg.eps, k, cfg.collide);
    case Mode::compensated: {
      GridField out = q_cutoff(f, f, cfg.eps, k, cfg.collide);
      LandauOptions lopt;
      lopt.prune_rel = cfg.collide.prune_rel;
      GridField ql = q_landau_conservative(f, k, lopt);
      const double scale = std::pow(cfg.eps, 2.0 - 2.0 * k.s);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * ql[i];
      return out;
    }
    case Mode::grazing_reference: {
      GridField out = q_cutoff(f, f, cfg.eps, k, cfg.collide);
      GridField qg = q_grazing(f, f, cfg.eps, k, cfg.collide);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += qg[i];
      return out;
    }
  }
  throw ConfigError("mode_rhs: unknown mode");
}

namespace {

DiagnosticsRow diagnostics(double t, const GridField& f, const SolverConfig& cfg) {
  DiagnosticsRow row;
  row.t = t;
  const Moments m = moments(f);
  row.mass = m.mass;
  row.px = m.momentum.x;
  row.py = m.momentum.y;
  row.pz = m.momentum.z;
  row.energy = m.energy;
  double ent = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] > 0.0) ent += f[i] * std::log(f[i]);
  row.entropy = ent * f.grid().cell_volume();
  row.l1_q = weighted_l1(f, cfg.diag_q);
  row.l2_l = weighted_l2(f, cfg.diag_l);
  double mn = f[0];
  for (std::size_t i = 1; i < f.size(); ++i) mn = std::fmin(mn, f[i]);
  row.min_f = mn;
  return row;
}

void check_negativity(const GridField& f, int step_idx, Trajectory& traj) {
  double mn = 0.0, mx = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    mn = std::fmin(mn, f[i]);
    mx = std::fmax(mx, f[i]);
  }
  if (mx > 0.0 && mn < -1e-6 * mx) {
    const double ratio = mn / mx;
    traj.worst_negative = std::fmin(traj.worst_negative, ratio);
    if (!traj.negativity_warned) {
      std::cerr << "warning: negativity beyond threshold at step " << step_idx
                << ", min f / max f = " << ratio << "\n";
      traj.negativity_warned = true;
    }
  }
}

}  // namespace

Trajectory simulate(const Distribution& f0, const SolverConfig& cfg, const KernelConfig& k) {
  cfg.validate();
  k.validate();
  double dt = cfg.dt;
  if (dt == 0.0) dt = dt_stable_strict(f0, cfg.eps, cfg.mode, k);
  if (dt > cfg.T) dt = cfg.T;
  const double heur = dt_stable_heuristic(f0, cfg.eps, k);
  if (dt > heur)
    std::cerr << "warning: dt = " << dt << " exceeds the stability heuristic " << heur << "\n";

  const int n_steps = std::max(1, int(std::ceil(cfg.T / dt - 1e-12)));
  dt = cfg.T / n_steps;

  auto rhs = [&](const GridField& f) { return mode_rhs(f, cfg, k); };

  Trajectory traj;
  GridField f = f0;
  traj.rows.push_back(diagnostics(0.0, f, cfg));
  for (int it = 0; it < n_steps; ++it) {
    try {
      f = step(f, dt, rhs, cfg.scheme == Scheme::picard ? Scheme::euler : cfg.scheme);
    } catch (const NumericError& e) {
      throw NumericError("blow-up at step " + std::to_string(it + 1) + ": " + e.what());
    }
    check_negativity(f, it + 1, traj);
    const double t = dt * (it + 1);
    if ((it + 1) % cfg.record_every == 0 || it + 1 == n_steps)
      traj.rows.push_back(diagnostics(t, f, cfg));
    if (cfg.snapshot_every > 0 && (it + 1) % cfg.snapshot_every == 0)
      traj.snapshots.emplace_back(t, f);
  }
  traj.final_field = f;
  return traj;
}

std::pair<Trajectory, std::vector<double>> picard_solve(const Distribution& f0,
                                                        const SolverConfig& cfg,
                                                        const KernelConfig& k) {
  cfg.validate();
  k.validate();
  if (cfg.mode != Mode::compensated)
    throw ConfigError("picard_solve: compensated mode only");

  double dt = cfg.picard.inner_dt;
  if (dt == 0.0) dt = dt_stable_strict(f0, cfg.eps, cfg.mode, k);
  const int n_steps = std::max(1, int(std::ceil(cfg.T / dt - 1e-12)));
  dt = cfg.T / n_steps;

  const double lscale = std::pow(cfg.eps, 2.0 - 2.0 * k.s);
  LandauOptions lopt;
  lopt.prune_rel = cfg.collide.prune_rel;

  // previous iterate's trajectory at every inner step; f^0(t) = f0
  std::vector<GridField> prev(std::size_t(n_steps) + 1, GridField(f0));
  std::vector<double> gaps;
  Trajectory traj;

  for (int outer = 1; outer <= cfg.picard.outer_iters; ++outer) {
    std::vector<GridField> cur;
    cur.reserve(n_steps + 1);
    cur.push_back(f0);
    traj = Trajectory{};
    traj.rows.push_back(diagnostics(0.0, f0, cfg));
    double gap = 0.0;
    GridField f = f0;
    for (int it = 0; it < n_steps; ++it) {
      const GridField& g = prev[it];  // frozen previous iterate at t_it
      // d f / dt = Q^{eps+}(g, target) - Q^{eps-}(g, f) + eps^{2-2s} Q_L(g, f)
      const GridField& gain_arg = cfg.picard.lagged_gain ? g : f;
      GridField gain = q_gain(g, gain_arg, cfg.eps, k, cfg.collide);
      GridField lossc = q_loss_coefficient(g, cfg.eps, k, cfg.collide);
      GridField ql = q_landau_bilinear(g, f, k, lopt);
      GridField fn = f;
      for (std::size_t i = 0; i < fn.size(); ++i)
        fn[i] += dt * (gain[i] - lossc[i] * f[i] + lscale * ql[i]);
      fn.check_finite("picard inner step");
      f = fn;
      cur.push_back(f);
      GridField diff = f;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= prev[it + 1][i];
      gap = std::fmax(gap, weighted_l1(diff, cfg.picard.gap_l));
      check_negativity(f, it + 1, traj);
      if ((it + 1) % cfg.record_every == 0 || it + 1 == n_steps)
        traj.rows.push_back(diagnostics(dt * (it + 1), f, cfg));
    }
    traj.final_field = f;
    gaps.push_back(gap);
    prev = std::move(cur);
    if (gap < cfg.picard.tol_l1) break;
    const std::size_t n = gaps.size();
    if (n >= 3 && gaps[n - 1] >= gaps[n - 2] && gaps[n - 2] >= gaps[n - 3])
      throw NumericError("picard_solve: iterate gaps non-decreasing over 3 iterations "
                         "(try a smaller T)");
  }
  return {traj, gaps};
}

void Trajectory::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("trajectory: cannot open " + path);
  out << "t,mass,px,py,pz,energy,entropy,l1_q,l2_l,min_f\n";
  char buf[512];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.mass,
                  r.px, r.py, r.pz, r.energy, r.entropy, r.l1_q, r.l2_l, r.min_f);
    out << buf;
  }
}

}  // namespace boltz
