#include "boltz/landau.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "boltz/error.hpp"

namespace boltz {

std::array<double, 6> LandauCoefficients::a(const Vec3& z) const {
  const double z2 = norm2(z);
  if (z2 == 0.0) return {0, 0, 0, 0, 0, 0};
  const double zg = std::pow(z2, 0.5 * gamma);
  const double c2 = lambda * zg * z2;  // Lambda |z|^(gamma+2)
  const double cz = lambda * zg;       // Lambda |z|^gamma
  return {c2 - cz * z.x * z.x, c2 - cz * z.y * z.y, c2 - cz * z.z * z.z,
          -cz * z.x * z.y,     -cz * z.x * z.z,     -cz * z.y * z.z};
}

Vec3 LandauCoefficients::b(const Vec3& z) const {
  const double z2 = norm2(z);
  if (z2 == 0.0) return {0, 0, 0};
  const double cz = -2.0 * lambda * std::pow(z2, 0.5 * gamma);
  return z * cz;
}

double LandauCoefficients::c(const Vec3& z) const {
  const double z2 = norm2(z);
  if (z2 == 0.0) return 0.0;
  return -2.0 * lambda * (gamma + 3.0) * std::pow(z2, 0.5 * gamma);
}

Vec3 LandauCoefficients::apply_a(const Vec3& z, const Vec3& w) const {
  const double z2 = norm2(z);
  if (z2 == 0.0) return {0, 0, 0};
  const double zg = std::pow(z2, 0.5 * gamma);
  // Lambda |z|^(gamma+2) w - Lambda |z|^gamma z (z.w)
  return w * (lambda * zg * z2) - z * (lambda * zg * dot(z, w));
}

namespace {

void require_lambda(const KernelConfig& k) {
  if (!k.lambda_set())
    throw ConfigError("landau: Lambda not calibrated (kernel.lambda must be positive)");
}

struct Active {
  std::vector<std::uint32_t> idx;
  std::vector<Vec3> pos;
  std::vector<double> val;
};

Active active_nodes(const GridField& f, double rel) {
  Active a;
  double mx = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mx = std::fmax(mx, std::fabs(f[i]));
  const double thr = rel * mx;
  const auto& g = f.grid();
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx)
        if (std::fabs(f[idx]) > thr) {
          a.idx.push_back(std::uint32_t(idx));
          a.pos.push_back(g.node(ix, iy, iz));
          a.val.push_back(f[idx]);
        }
  return a;
}

// 4th-order first derivative along an axis, zero extension.
void diff4(const GridField& f, int axis, GridField& out) {
  const auto& g = f.grid();
  const int N = g.N;
  const double inv = 1.0 / (12.0 * g.h);
  const std::ptrdiff_t stride =
      axis == 0 ? 1 : (axis == 1 ? std::ptrdiff_t(N) : std::ptrdiff_t(N) * N);
  auto at = [&](std::ptrdiff_t base, int i, int off) -> double {
    const int j = i + off;
    if (j < 0 || j >= N) return 0.0;
    return f[base + std::ptrdiff_t(j) * stride];
  };
  std::size_t idx = 0;
  for (int iz = 0; iz < N; ++iz)
    for (int iy = 0; iy < N; ++iy)
      for (int ix = 0; ix < N; ++ix, ++idx) {
        const int i = axis == 0 ? ix : (axis == 1 ? iy : iz);
        const std::ptrdiff_t base = std::ptrdiff_t(idx) - std::ptrdiff_t(i) * stride;
        out[idx] = (8.0 * (at(base, i, 1) - at(base, i, -1)) - (at(base, i, 2) - at(base, i, -2))) *
                   inv;
      }
}

// 4th-order second derivative along an axis, zero extension.
void diff4_second(const GridField& f, int axis, GridField& out) {
  const auto& g = f.grid();
  const int N = g.N;
  const double inv = 1.0 / (12.0 * g.h * g.h);
  const std::ptrdiff_t stride =
      axis == 0 ? 1 : (axis == 1 ? std::ptrdiff_t(N) : std::ptrdiff_t(N) * N);
  auto at = [&](std::ptrdiff_t base, int i, int off) -> double {
    const int j = i + off;
    if (j < 0 || j >= N) return 0.0;
    return f[base + std::ptrdiff_t(j) * stride];
  };
  std::size_t idx = 0;
  for (int iz = 0; iz < N; ++iz)
    for (int iy = 0; iy < N; ++iy)
      for (int ix = 0; ix < N; ++ix, ++idx) {
        const int i = axis == 0 ? ix : (axis == 1 ? iy : iz);
        const std::ptrdiff_t base = std::ptrdiff_t(idx) - std::ptrdiff_t(i) * stride;
        out[idx] = (-at(base, i, -2) + 16.0 * at(base, i, -1) - 30.0 * at(base, i, 0) +
                    16.0 * at(base, i, 1) - at(base, i, 2)) *
                   inv;
      }
}

// Shared backend-A core: hess[6] and value of h supplied per node.
GridField bilinear_core(const GridField& g, const std::vector<std::array<double, 7>>& hess_val,
                        const std::vector<std::uint32_t>& out_nodes, const KernelConfig& k,
                        const LandauOptions& opt) {
  const auto& grid = g.grid();
  GridField out(grid);
  Active ag = active_nodes(g, opt.prune_rel);
  if (ag.idx.empty()) return out;
  const double h3 = grid.cell_volume();
  const double gamma = k.gamma;
  const double lam = k.lambda;

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t oi = 0; oi < std::ptrdiff_t(out_nodes.size()); ++oi) {
    const std::size_t node = out_nodes[oi];
    const Vec3 v = grid.node(node);
    const auto& hv = hess_val[oi];
    double acc = 0.0;
    for (std::size_t j = 0; j < ag.idx.size(); ++j) {
      const Vec3 z = v - ag.pos[j];
      const double z2 = norm2(z);
      if (z2 == 0.0) continue;
      const double zg = gamma == 1.0 ? std::sqrt(z2) : std::pow(z2, 0.5 * gamma);
      const double gj = ag.val[j];
      // sum_ij a_ij(z) H_ij = Lambda zg (z2 tr H - z.Hz)
      const double trH = hv[0] + hv[1] + hv[2];
      const double zHz = z.x * z.x * hv[0] + z.y * z.y * hv[1] + z.z * z.z * hv[2] +
                         2.0 * (z.x * z.y * hv[3] + z.x * z.z * hv[4] + z.y * z.z * hv[5]);
      const double a_term = lam * zg * (z2 * trH - zHz);
      const double c_term = -2.0 * lam * (gamma + 3.0) * zg * hv[6];
      acc += gj * (a_term - c_term);
    }
    out[node] = acc * h3;
  }
  return out;
}

}  // namespace

GridField q_landau_bilinear(const GridField& g, const GridField& h, const KernelConfig& k,
                            const LandauOptions& opt) {
  require_lambda(k);
  if (!(g.grid() == h.grid())) throw ConfigError("landau: fields on different grids");
  const auto& grid = g.grid();

  GridField hxx(grid), hyy(grid), hzz(grid), dx(grid), dy(grid), dxy(grid), dxz(grid), dyz(grid);
  diff4_second(h, 0, hxx);
  diff4_second(h, 1, hyy);
  diff4_second(h, 2, hzz);
  diff4(h, 0, dx);
  diff4(h, 1, dy);
  diff4(dx, 1, dxy);
  diff4(dx, 2, dxz);
  diff4(dy, 2, dyz);

  // outputs: wherever h's stencil reaches
  Active ah = active_nodes(h, opt.prune_rel);
  std::vector<char> mark(grid.size(), 0);
  const int N = grid.N;
  for (std::size_t j = 0; j < ah.idx.size(); ++j) {
    const std::size_t idx = ah.idx[j];
    const int ix = int(idx % N), iy = int((idx / N) % N), iz = int(idx / (std::size_t(N) * N));
    for (int dz2 = -4; dz2 <= 4; ++dz2)
      for (int dy2 = -4; dy2 <= 4; ++dy2)
        for (int dx2 = -4; dx2 <= 4; ++dx2) {
          const int jx = ix + dx2, jy = iy + dy2, jz = iz + dz2;
          if (jx < 0 || jy < 0 || jz < 0 || jx >= N || jy >= N || jz >= N) continue;
          mark[grid.index(jx, jy, jz)] = 1;
        }
  }
  std::vector<std::uint32_t> out_nodes;
  std::vector<std::array<double, 7>> hess_val;
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (mark[i]) {
      out_nodes.push_back(std::uint32_t(i));
      hess_val.push_back({hxx[i], hyy[i], hzz[i], dxy[i], dxz[i], dyz[i], h[i]});
    }
  return bilinear_core(g, hess_val, out_nodes, k, opt);
}

GridField q_landau_bilinear_analytic(const GridField& g_samples, const GaussianMixture& h,
                                     const KernelConfig& k, const LandauOptions& opt) {
  require_lambda(k);
  const auto& grid = g_samples.grid();
  const double rh = h.support_radius(opt.prune_rel) + 2.0 * grid.h;
  std::vector<std::uint32_t> out_nodes;
  std::vector<std::array<double, 7>> hess_val;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Vec3 v = grid.node(i);
    if (norm2(v) > rh * rh) continue;
    out_nodes.push_back(std::uint32_t(i));
    const auto H = h.hessian(v);
    hess_val.push_back({H[0], H[1], H[2], H[3], H[4], H[5], h(v)});
  }
  return bilinear_core(g_samples, hess_val, out_nodes, k, opt);
}

GridField q_landau_conservative(const GridField& f, const KernelConfig& k,
                                const LandauOptions& opt) {
  require_lambda(k);
  const auto& grid = f.grid();
  const int N = grid.N;
  GridField out(grid);

  // central gradient, needed on the interior working set
  GridField gx(grid), gy(grid), gz(grid);
  {
    const double inv = 1.0 / (2.0 * grid.h);
    std::size_t idx = 0;
    auto at = [&](int jx, int jy, int jz) -> double {
      if (jx < 0 || jy < 0 || jz < 0 || jx >= N || jy >= N || jz >= N) return 0.0;
      return f[grid.index(jx, jy, jz)];
    };
    for (int iz = 0; iz < N; ++iz)
      for (int iy = 0; iy < N; ++iy)
        for (int ix = 0; ix < N; ++ix, ++idx) {
          gx[idx] = (at(ix + 1, iy, iz) - at(ix - 1, iy, iz)) * inv;
          gy[idx] = (at(ix, iy + 1, iz) - at(ix, iy - 1, iz)) * inv;
          gz[idx] = (at(ix, iy, iz + 1) - at(ix, iy, iz - 1)) * inv;
        }
  }

  // working set: one layer inside the box (so the divergence test functions
  // v and |v|^2 differentiate exactly), pruned to the activity ball
  double mx = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mx = std::fmax(mx, std::fabs(f[i]));
  if (mx == 0.0) return out;
  const double thr = opt.prune_rel * mx;
  double r2max = 0.0;
  {
    std::size_t idx = 0;
    for (int iz = 0; iz < N; ++iz)
      for (int iy = 0; iy < N; ++iy)
        for (int ix = 0; ix < N; ++ix, ++idx)
          if (std::fabs(f[idx]) > thr) r2max = std::fmax(r2max, norm2(grid.node(ix, iy, iz)));
  }
  const double rr = std::sqrt(r2max) + 2.0 * grid.h;

  std::vector<std::uint32_t> nodes;
  std::vector<Vec3> pos;
  std::vector<double> fv;
  std::vector<Vec3> df;
  {
    std::size_t idx = 0;
    for (int iz = 0; iz < N; ++iz)
      for (int iy = 0; iy < N; ++iy)
        for (int ix = 0; ix < N; ++ix, ++idx) {
          if (ix < 1 || iy < 1 || iz < 1 || ix >= N - 1 || iy >= N - 1 || iz >= N - 1) continue;
          const Vec3 v = grid.node(ix, iy, iz);
          if (norm2(v) > rr * rr) continue;
          nodes.push_back(std::uint32_t(idx));
          pos.push_back(v);
          fv.push_back(f[idx]);
          df.push_back({gx[idx], gy[idx], gz[idx]});
        }
  }
  const std::size_t M = nodes.size();
  if (M == 0) return out;

  // pair flux F_i = h^3 sum_j a(v_i - v_j) [f_j Df_i - f_i Df_j]; the full
  // double sum keeps the pairwise antisymmetry that makes the momentum and
  // energy sums vanish identically.
  std::vector<Vec3> flux(M);
  const double gamma = k.gamma;
  const double lam = k.lambda;
  const double h3 = grid.cell_volume();
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(M); ++i) {
    const Vec3 vi = pos[i];
    const double fi = fv[i];
    const Vec3 dfi = df[i];
    Vec3 acc{0, 0, 0};
    for (std::size_t j = 0; j < M; ++j) {
      const Vec3 z = vi - pos[j];
      const double z2 = norm2(z);
      if (z2 == 0.0) continue;
      const double zg = gamma == 1.0 ? std::sqrt(z2) : std::pow(z2, 0.5 * gamma);
      const Vec3 w = df[j] * (-fi) + dfi * fv[j];  // f_j Df_i - f_i Df_j
      // a(z) w = Lambda zg (z2 w - z (z.w))
      const double zw = dot(z, w);
      acc += (w * z2 - z * zw) * (lam * zg);
    }
    flux[i] = acc * h3;
  }

  // scatter flux into full fields, then central divergence
  GridField Fx(grid), Fy(grid), Fz(grid);
  for (std::size_t i = 0; i < M; ++i) {
    Fx[nodes[i]] = flux[i].x;
    Fy[nodes[i]] = flux[i].y;
    Fz[nodes[i]] = flux[i].z;
  }
  {
    const double inv = 1.0 / (2.0 * grid.h);
    std::size_t idx = 0;
    auto at = [&](const GridField& F, int jx, int jy, int jz) -> double {
      if (jx < 0 || jy < 0 || jz < 0 || jx >= N || jy >= N || jz >= N) return 0.0;
      return F[grid.index(jx, jy, jz)];
    };
    for (int iz = 0; iz < N; ++iz)
      for (int iy = 0; iy < N; ++iy)
        for (int ix = 0; ix < N; ++ix, ++idx) {
          out[idx] = (at(Fx, ix + 1, iy, iz) - at(Fx, ix - 1, iy, iz) + at(Fy, ix, iy + 1, iz) -
                      at(Fy, ix, iy - 1, iz) + at(Fz, ix, iy, iz + 1) - at(Fz, ix, iy, iz - 1)) *
                     inv;
        }
  }
  return out;
}

GridField q_landau(const GridField& g, const GridField& h, const KernelConfig& k,
                   LandauBackend backend, const LandauOptions& opt) {
  if (backend == LandauBackend::bilinear) return q_landau_bilinear(g, h, k, opt);
  if (g.values() != h.values())
    throw ConfigError("landau: conservative backend requires g = h");
  return q_landau_conservative(h, k, opt);
}

}  // namespace boltz
