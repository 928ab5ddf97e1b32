#include "boltz/collision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

#include "boltz/error.hpp"
#include "boltz/fastmath.hpp"
#include "boltz/norms.hpp"

namespace boltz {

namespace {

constexpr double pi = std::numbers::pi;

double cutoff_angle(double eps) { return 2.0 * std::asin(std::fmin(eps, 1.0)); }

void require_eps(double eps) {
  if (!(eps > 0.0) || eps > 0.70710678118654752440 + 1e-15)
    throw std::domain_error("collision: eps must lie in (0, sqrt(2)/2]");
}

// ---------------------------------------------------------------------------
// cubic B-spline interpolation (prefiltered, zero extension)
// ---------------------------------------------------------------------------

// Interpolating cubic B-spline representation of a grid field. C^2 smoothness
// is what the near-grazing sigma nodes need: trilinear interpolation error
// does not cancel over the azimuthal ring when |v' - v| < h, the spline's
// does up to O(h^2) relative.
class CubicSplineField {
 public:
  explicit CubicSplineField(const GridField& f) : grid_(f.grid()), c_(f.values()) {
    const int N = grid_.N;
    // prefilter: pole z1 = sqrt(3) - 2, gain -6 z1, zero-extension boundaries
    const double z1 = std::sqrt(3.0) - 2.0;
    const double gain = -6.0 * z1;
    std::vector<double> line(N);
    auto filter_line = [&](double* base, std::ptrdiff_t stride) {
      double prev = 0.0;
      for (int i = 0; i < N; ++i) {
        prev = base[i * stride] + z1 * prev;
        line[i] = prev;
      }
      prev = 0.0;
      for (int i = N - 1; i >= 0; --i) {
        prev = line[i] + z1 * prev;
        base[i * stride] = gain * prev;
      }
    };
    for (int iz = 0; iz < N; ++iz)
      for (int iy = 0; iy < N; ++iy) filter_line(&c_[grid_.index(0, iy, iz)], 1);
    for (int iz = 0; iz < N; ++iz)
      for (int ix = 0; ix < N; ++ix) filter_line(&c_[grid_.index(ix, 0, iz)], N);
    for (int iy = 0; iy < N; ++iy)
      for (int ix = 0; ix < N; ++ix)
        filter_line(&c_[grid_.index(ix, iy, 0)], std::ptrdiff_t(N) * N);
  }

  double eval(const Vec3& p) const {
    const int N = grid_.N;
    const double fx = (p.x + grid_.L) / grid_.h - 0.5;
    const double fy = (p.y + grid_.L) / grid_.h - 0.5;
    const double fz = (p.z + grid_.L) / grid_.h - 0.5;
    const int ix = int(std::floor(fx)), iy = int(std::floor(fy)), iz = int(std::floor(fz));
    if (ix < -2 || iy < -2 || iz < -2 || ix > N || iy > N || iz > N) return 0.0;
    double wx[4], wy[4], wz[4];
    weights(fx - ix, wx);
    weights(fy - iy, wy);
    weights(fz - iz, wz);
    double acc = 0.0;
    for (int dz = 0; dz < 4; ++dz) {
      const int jz = iz - 1 + dz;
      if (jz < 0 || jz >= N) continue;
      for (int dy = 0; dy < 4; ++dy) {
        const int jy = iy - 1 + dy;
        if (jy < 0 || jy >= N) continue;
        const double wzy = wz[dz] * wy[dy];
        const double* row = &c_[grid_.index(0, jy, jz)];
        double rx = 0.0;
        for (int dx = 0; dx < 4; ++dx) {
          const int jx = ix - 1 + dx;
          if (jx < 0 || jx >= N) continue;
          rx += wx[dx] * row[jx];
        }
        acc += wzy * rx;
      }
    }
    return acc;
  }

 private:
  static void weights(double t, double* w) {
    const double t2 = t * t, t3 = t2 * t;
    w[0] = (1.0 - 3.0 * t + 3.0 * t2 - t3) / 6.0;
    w[1] = (4.0 - 6.0 * t2 + 3.0 * t3) / 6.0;
    w[2] = (1.0 + 3.0 * t + 3.0 * t2 - 3.0 * t3) / 6.0;
    w[3] = t3 / 6.0;
  }

  VelocityGrid grid_;
  std::vector<double> c_;
};

inline double trilinear_raw(const VelocityGrid& g, const double* vals, const Vec3& p) {
  const int N = g.N;
  const double fx = (p.x + g.L) / g.h - 0.5;
  const double fy = (p.y + g.L) / g.h - 0.5;
  const double fz = (p.z + g.L) / g.h - 0.5;
  const int ix = int(std::floor(fx)), iy = int(std::floor(fy)), iz = int(std::floor(fz));
  const double tx = fx - ix, ty = fy - iy, tz = fz - iz;
  double acc = 0.0;
  for (int dz = 0; dz <= 1; ++dz) {
    const int jz = iz + dz;
    if (jz < 0 || jz >= N) continue;
    const double wz = dz ? tz : 1.0 - tz;
    for (int dy = 0; dy <= 1; ++dy) {
      const int jy = iy + dy;
      if (jy < 0 || jy >= N) continue;
      const double wzy = wz * (dy ? ty : 1.0 - ty);
      const std::size_t base = g.index(0, jy, jz);
      double rx = 0.0;
      if (ix >= 0 && ix < N) rx += (1.0 - tx) * vals[base + ix];
      if (ix + 1 >= 0 && ix + 1 < N) rx += tx * vals[base + ix + 1];
      acc += wzy * rx;
    }
  }
  return acc;
}

// Grid field with trilinear far evaluation and spline near evaluation.
struct HybridGridEval {
  const VelocityGrid* grid;
  const double* vals;
  const CubicSplineField* spline;  // may be null (plain trilinear everywhere)

  double eval_far(const Vec3& p) const { return trilinear_raw(*grid, vals, p); }
  double eval_near(const Vec3& p) const {
    return spline ? spline->eval(p) : trilinear_raw(*grid, vals, p);
  }
  // grid fields rely on the energy-ball prune only
  double neg_log_bound(const Vec3&, double) const { return 0.0; }
};

// Closed-form mixture evaluation with precomputed component constants and a
// cheap upper bound on the collision sphere (for pair pruning).
struct MixtureEval {
  struct Comp {
    Vec3 mean;
    Vec3 inv2T;        // 1/(2 T_alpha)
    double amp;        // weight (2 pi)^{-3/2} / sqrt(Tx Ty Tz)
    double inv2T_min;  // weakest decay direction
    double log_amp;
  };
  std::vector<Comp> comps;

  explicit MixtureEval(const GaussianMixture& m) {
    const double c0 = std::pow(2.0 * pi, -1.5);
    for (const auto& c : m.components()) {
      Comp k;
      k.mean = c.mean;
      k.inv2T = {0.5 / c.temps.x, 0.5 / c.temps.y, 0.5 / c.temps.z};
      k.amp = c.weight * c0 / std::sqrt(c.temps.x * c.temps.y * c.temps.z);
      k.inv2T_min = std::fmin(k.inv2T.x, std::fmin(k.inv2T.y, k.inv2T.z));
      k.log_amp = std::log(k.amp);
      comps.push_back(k);
    }
  }

  double eval(const Vec3& p) const {
    double acc = 0.0;
    for (const auto& c : comps) {
      const double dx = p.x - c.mean.x, dy = p.y - c.mean.y, dz = p.z - c.mean.z;
      const double arg = dx * dx * c.inv2T.x + dy * dy * c.inv2T.y + dz * dz * c.inv2T.z;
      acc += c.amp * fast_exp(-arg);
    }
    return acc;
  }
  double eval_far(const Vec3& p) const { return eval(p); }
  double eval_near(const Vec3& p) const { return eval(p); }

  // min over components of -log(max value on the sphere |x - mid| = r);
  // post-collision points (and the pre-collision pair) all lie on that sphere
  double neg_log_bound(const Vec3& mid, double r) const {
    double best = 1e300;
    for (const auto& c : comps) {
      const double d = norm(mid - c.mean);
      const double t = std::fmax(0.0, d - r);
      best = std::fmin(best, t * t * c.inv2T_min - c.log_amp);
    }
    return best;
  }
};

// ---------------------------------------------------------------------------
// active node lists
// ---------------------------------------------------------------------------

struct ActiveList {
  std::vector<std::uint32_t> idx;  // linear node index
  std::vector<Vec3> pos;
  std::vector<double> r2;  // |v|^2, ascending
  double max_r2 = 0.0;
};

ActiveList build_ball(const VelocityGrid& g, double r2max) {
  struct Entry {
    double r2;
    std::uint32_t idx;
  };
  std::vector<Entry> entries;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx) {
        const double r2 = norm2(g.node(ix, iy, iz));
        if (r2 <= r2max) entries.push_back({r2, std::uint32_t(idx)});
      }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.r2 < b.r2 || (a.r2 == b.r2 && a.idx < b.idx);
  });
  ActiveList out;
  out.idx.reserve(entries.size());
  for (const auto& e : entries) {
    out.idx.push_back(e.idx);
    out.pos.push_back(g.node(e.idx));
    out.r2.push_back(e.r2);
    out.max_r2 = e.r2;
  }
  return out;
}

double support_r2(const GridField& f, double rel) {
  double mx = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mx = std::fmax(mx, std::fabs(f[i]));
  if (mx == 0.0) return -1.0;
  const double thr = rel * mx;
  const auto& g = f.grid();
  double r2 = 0.0;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx)
        if (std::fabs(f[idx]) > thr) r2 = std::fmax(r2, norm2(g.node(ix, iy, iz)));
  // one stencil layer of slack for the interpolation reach
  const double r = std::sqrt(r2) + 2.0 * g.h;
  return r * r;
}

// ---------------------------------------------------------------------------
// gather core
// ---------------------------------------------------------------------------

struct SigmaSoA {
  std::vector<double> ct, st, cp, sp, wb, sin_half;
  std::size_t size() const { return ct.size(); }
  double total_wb = 0.0;

  explicit SigmaSoA(const SigmaTable& t) {
    ct.reserve(t.nodes.size());
    for (const auto& n : t.nodes) {
      ct.push_back(n.cos_theta);
      st.push_back(n.sin_theta);
      cp.push_back(n.cos_phi);
      sp.push_back(n.sin_phi);
      wb.push_back(n.wb);
      sin_half.push_back(std::sin(0.5 * n.theta));
    }
    total_wb = t.total_wb;
  }
};

/// Accumulates, for every output node v in `outs`,
///   h^3 sum_{v*} |v-v*|^gamma sum_k wb_k [ G(v*') H(v') - (loss) G(v*) H(v) ]
/// with v', v*' the post-collision pair for sigma_k in the (n, e1, e2) frame.
/// g_nodal/h_nodal supply the loss factors at nodes. Deterministic: fixed
/// iteration order, parallel only across outputs.
template <class FieldG, class FieldH>
void gather_core(const VelocityGrid& grid, const SigmaSoA& sig, const FieldG& gf,
                 const FieldH& hf, const std::vector<double>& g_nodal,
                 const std::vector<double>& h_nodal, const ActiveList& outs,
                 const ActiveList& stars, double pair_r2_max, double gamma, bool subtract_loss,
                 double switch_dist, std::vector<double>& out) {
  const double h3 = grid.cell_volume();
  const std::size_t n_sigma = sig.size();
  const std::size_t n_out = outs.idx.size();

#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t oi = 0; oi < std::ptrdiff_t(n_out); ++oi) {
    const Vec3 v = outs.pos[oi];
    const double r2v = outs.r2[oi];
    const double hv = h_nodal[outs.idx[oi]];
    double acc = 0.0;
    for (std::size_t sj = 0; sj < stars.idx.size(); ++sj) {
      if (stars.r2[sj] + r2v > pair_r2_max) break;  // r2 ascending
      const Vec3 vs = stars.pos[sj];
      const Vec3 u = v - vs;
      const double umod2 = norm2(u);
      if (umod2 == 0.0) continue;  // kinetic factor vanishes
      const double umod = std::sqrt(umod2);
      const double r = 0.5 * umod;
      const Vec3 mid = (v + vs) * 0.5;
      // every field evaluation sits on the sphere |x - mid| = r
      if (gf.neg_log_bound(mid, r) + hf.neg_log_bound(mid, r) > 50.0) continue;
      const double kin = gamma == 1.0 ? umod : (gamma == 2.0 ? umod2 : std::pow(umod, gamma));
      const double gv = g_nodal[stars.idx[sj]];
      const Vec3 n = u / umod;
      Vec3 e1, e2;
      orthonormal_frame(n, e1, e2);
      // nodes below the switch distance |v'-v| = 2 r sin(theta/2) use the
      // smooth (near) evaluation
      const double sin_half_switch = switch_dist / (2.0 * r);
      const double loss_term = subtract_loss ? gv * hv : 0.0;
      double pair_acc = 0.0;
      for (std::size_t k = 0; k < n_sigma; ++k) {
        const double st = sig.st[k];
        const Vec3 sigma{sig.ct[k] * n.x + st * (sig.cp[k] * e1.x + sig.sp[k] * e2.x),
                         sig.ct[k] * n.y + st * (sig.cp[k] * e1.y + sig.sp[k] * e2.y),
                         sig.ct[k] * n.z + st * (sig.cp[k] * e1.z + sig.sp[k] * e2.z)};
        const Vec3 vp = mid + sigma * r;
        const Vec3 vsp = mid - sigma * r;
        double gh;
        if (sig.sin_half[k] < sin_half_switch)
          gh = gf.eval_near(vsp) * hf.eval_near(vp);
        else
          gh = gf.eval_far(vsp) * hf.eval_far(vp);
        pair_acc += sig.wb[k] * (gh - loss_term);
      }
      acc += kin * pair_acc;
    }
    out[outs.idx[oi]] = acc * h3;
  }
}

SigmaTable cutoff_table(const KernelConfig& k, double eps, const CollisionOptions& opt) {
  const double lo = cutoff_angle(eps);
  if (lo >= 0.5 * pi * (1 - 1e-12)) {
    // sin(theta/2) >= sqrt(2)/2 keeps only theta = pi/2: measure zero
    return SigmaTable{};
  }
  std::vector<double> bp{lo, 0.5 * pi};
  for (double b : opt.breakpoints)
    if (b > lo * (1 + 1e-12) && b < 0.5 * pi * (1 - 1e-12)) bp.push_back(b);
  std::sort(bp.begin(), bp.end());
  // subdivide long panels to the requested density
  std::vector<double> full;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const int extra =
        std::max(1, int(std::ceil(std::log10(bp[i + 1] / bp[i]) * opt.panels_per_decade)));
    for (int j = 0; j < extra; ++j)
      full.push_back(bp[i] * std::exp(std::log(bp[i + 1] / bp[i]) * double(j) / extra));
  }
  full.push_back(bp.back());
  auto quad = AngularQuadrature::make(full, opt.polar_nodes_per_panel, opt.n_azimuth);
  return SigmaTable::build(k, quad);
}

SigmaTable band_table(const KernelConfig& k, double eps_lo, double eps_hi,
                      const CollisionOptions& opt) {
  const double lo = eps_lo > 0.0 ? std::fmax(cutoff_angle(eps_lo), k.theta_min) : k.theta_min;
  const double hi = std::fmin(cutoff_angle(eps_hi), 0.5 * pi);
  if (!(hi > lo))
    throw ConfigError("collision band: empty angular band, eps below the quadrature floor");
  const int per_decade = std::max(
      opt.band_panels_per_decade,
      int(std::ceil(16.0 / (opt.polar_nodes_per_panel * std::log10(hi / lo)))));
  auto quad =
      AngularQuadrature::make_range(lo, hi, opt.polar_nodes_per_panel, opt.n_azimuth, per_decade);
  if (int(quad.theta_nodes.size()) < 16)
    throw ConfigError("collision band: fewer than 16 polar nodes in the band");
  return SigmaTable::build(k, quad);
}

struct GridEvalBundle {
  HybridGridEval geval, heval;
  std::unique_ptr<CubicSplineField> gspline, hspline;
  ActiveList outs, stars;
  double pair_r2_max = 0.0;
  double switch_dist = 0.0;
  bool empty = false;
};

GridEvalBundle prepare_grid_eval(const GridField& g, const GridField& h,
                                 const CollisionOptions& opt, bool need_spline) {
  if (!(g.grid() == h.grid())) throw ConfigError("collision: fields on different grids");
  GridEvalBundle b;
  const double rg2 = support_r2(g, opt.prune_rel);
  const double rh2 = support_r2(h, opt.prune_rel);
  if (rg2 < 0.0 || rh2 < 0.0) {
    b.empty = true;
    return b;
  }
  b.pair_r2_max = rg2 + rh2;
  b.outs = build_ball(g.grid(), b.pair_r2_max);
  b.stars = b.outs;
  if (need_spline && opt.hybrid_switch > 0.0) {
    b.gspline = std::make_unique<CubicSplineField>(g);
    b.hspline = std::make_unique<CubicSplineField>(h);
  }
  b.switch_dist = opt.hybrid_switch * g.grid().h;
  b.geval = HybridGridEval{&g.grid(), g.values().data(), b.gspline.get()};
  b.heval = HybridGridEval{&h.grid(), h.values().data(), b.hspline.get()};
  return b;
}

GridField run_grid_gather(const GridField& g, const GridField& h, const SigmaTable& table,
                          const KernelConfig& k, const CollisionOptions& opt,
                          bool subtract_loss) {
  GridField out(g.grid());
  if (table.nodes.empty()) return out;
  auto bundle = prepare_grid_eval(g, h, opt, /*need_spline=*/true);
  if (bundle.empty) return out;
  SigmaSoA sig(table);
  gather_core(g.grid(), sig, bundle.geval, bundle.heval, g.values(), h.values(), bundle.outs,
              bundle.stars, bundle.pair_r2_max, k.gamma, subtract_loss, bundle.switch_dist,
              out.values());
  return out;
}

GridField run_analytic_gather(const GaussianMixture& g, const GaussianMixture& h,
                              const SigmaTable& table, const VelocityGrid& grid,
                              const KernelConfig& k, const CollisionOptions& opt,
                              bool subtract_loss) {
  GridField out(grid);
  if (table.nodes.empty()) return out;
  const double rg = g.support_radius(opt.prune_rel), rh = h.support_radius(opt.prune_rel);
  const double pair_r2_max = rg * rg + rh * rh;
  ActiveList outs = build_ball(grid, pair_r2_max);
  std::vector<double> g_nodal(grid.size(), 0.0), h_nodal(grid.size(), 0.0);
  for (std::size_t i = 0; i < outs.idx.size(); ++i) {
    g_nodal[outs.idx[i]] = g(outs.pos[i]);
    h_nodal[outs.idx[i]] = h(outs.pos[i]);
  }
  SigmaSoA sig(table);
  MixtureEval ge(g), he(h);
  gather_core(grid, sig, ge, he, g_nodal, h_nodal, outs, outs, pair_r2_max, k.gamma,
              subtract_loss, 0.0, out.values());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// public operators
// ---------------------------------------------------------------------------

GridField q_gain(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                 const CollisionOptions& opt) {
  require_eps(eps);
  return run_grid_gather(g, h, cutoff_table(k, eps, opt), k, opt, false);
}

GridField q_loss_coefficient(const GridField& g, double eps, const KernelConfig& k,
                             const CollisionOptions& opt) {
  require_eps(eps);
  const auto& grid = g.grid();
  GridField out(grid);
  const double A_eps = angular_constants(k, eps).A_eps;
  const double rg2 = support_r2(g, opt.prune_rel);
  if (rg2 < 0.0) return out;
  ActiveList stars = build_ball(grid, rg2);
  const double h3 = grid.cell_volume();
  const std::size_t n = grid.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(n); ++i) {
    const Vec3 v = grid.node(std::size_t(i));
    double acc = 0.0;
    for (std::size_t sj = 0; sj < stars.idx.size(); ++sj) {
      const double gv = g[stars.idx[sj]];
      if (gv == 0.0) continue;
      acc += std::pow(norm(v - stars.pos[sj]), k.gamma) * gv;
    }
    out[std::size_t(i)] = A_eps * h3 * acc;
  }
  return out;
}

GridField q_cutoff(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                   const CollisionOptions& opt) {
  require_eps(eps);
  return run_grid_gather(g, h, cutoff_table(k, eps, opt), k, opt, true);
}

GridField q_band(const GridField& g, const GridField& h, double eps_lo, double eps_hi,
                 const KernelConfig& k, const CollisionOptions& opt) {
  require_eps(eps_hi);
  return run_grid_gather(g, h, band_table(k, eps_lo, eps_hi, opt), k, opt, true);
}

GridField q_grazing(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                    const CollisionOptions& opt) {
  require_eps(eps);
  if (!(eps > std::sin(0.5 * k.theta_min)))
    throw ConfigError("q_grazing: eps below the quadrature floor sin(theta_min/2)");
  return q_band(g, h, 0.0, eps, k, opt);
}

GridField m_eps(const GridField& g, const GridField& h, double eps, const KernelConfig& k,
                const CollisionOptions& opt) {
  GridField out = q_cutoff(g, h, eps, k, opt);
  const bool same = g.values() == h.values();
  LandauOptions lopt;
  lopt.prune_rel = opt.prune_rel;
  GridField ql = same ? q_landau_conservative(h, k, lopt) : q_landau_bilinear(g, h, k, lopt);
  const double scale = std::pow(eps, 2.0 - 2.0 * k.s);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += scale * ql[i];
  return out;
}

GridField upsilon(const GridField& f, double eps, const KernelConfig& k,
                  const CollisionOptions& opt) {
  LandauOptions lopt;
  lopt.prune_rel = opt.prune_rel;
  GridField ql = q_landau_conservative(f, k, lopt);
  GridField qe = q_grazing(f, f, eps, k, opt);
  const double c = std::pow(eps, 2.0 * k.s - 2.0);
  GridField out(f.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (ql[i] - c * qe[i]) / eps;
  return out;
}

GridField q_gain_analytic(const GaussianMixture& g, const GaussianMixture& h, double eps,
                          const VelocityGrid& grid, const KernelConfig& k,
                          const CollisionOptions& opt) {
  require_eps(eps);
  return run_analytic_gather(g, h, cutoff_table(k, eps, opt), grid, k, opt, false);
}

GridField q_cutoff_analytic(const GaussianMixture& g, const GaussianMixture& h, double eps,
                            const VelocityGrid& grid, const KernelConfig& k,
                            const CollisionOptions& opt) {
  require_eps(eps);
  return run_analytic_gather(g, h, cutoff_table(k, eps, opt), grid, k, opt, true);
}

GridField q_grazing_analytic(const GaussianMixture& g, const GaussianMixture& h, double eps,
                             const VelocityGrid& grid, const KernelConfig& k,
                             const CollisionOptions& opt) {
  require_eps(eps);
  if (!(eps > std::sin(0.5 * k.theta_min)))
    throw ConfigError("q_grazing: eps below the quadrature floor sin(theta_min/2)");
  return run_analytic_gather(g, h, band_table(k, 0.0, eps, opt), grid, k, opt, true);
}

}  // namespace boltz
