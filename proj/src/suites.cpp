#include "boltz/suites.hpp"

#include <cmath>
#include <random>

#include "boltz/analytic.hpp"
#include "boltz/landau.hpp"
#include "boltz/norms.hpp"
#include "boltz/weights.hpp"

namespace boltz {

namespace {

Vec3 random_vec(std::mt19937_64& rng, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  return {u(rng), u(rng), u(rng)};
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  double r = norm(v);
  while (r < 1e-8) {
    v = {n(rng), n(rng), n(rng)};
    r = norm(v);
  }
  return v / r;
}

GaussianMixture random_mixture(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nc(2, 4);
  std::uniform_real_distribution<double> w(0.3, 1.5), m(-1.8, 1.8), t(0.6, 1.4);
  std::vector<GaussianMixture::Component> comps;
  const int n = nc(rng);
  for (int i = 0; i < n; ++i)
    comps.push_back({w(rng), {m(rng), m(rng), m(rng)}, {t(rng), t(rng), t(rng)}});
  return GaussianMixture(comps);
}

GridField random_signed_field(std::mt19937_64& rng, const VelocityGrid& g) {
  GridField f(g);
  std::uniform_int_distribution<int> nc(2, 4);
  std::uniform_real_distribution<double> w(0.3, 1.5), m(-1.8, 1.8), t(0.6, 1.4), sgn(0.0, 1.0);
  const int n = nc(rng);
  for (int i = 0; i < n; ++i) {
    const double weight = (sgn(rng) < 0.5 ? -1.0 : 1.0) * w(rng);
    const Vec3 mean{m(rng), m(rng), m(rng)};
    const Vec3 temps{t(rng), t(rng), t(rng)};
    GaussianMixture gm({GaussianMixture::Component{std::fabs(weight), mean, temps}});
    std::size_t idx = 0;
    for (int iz = 0; iz < g.N; ++iz)
      for (int iy = 0; iy < g.N; ++iy)
        for (int ix = 0; ix < g.N; ++ix, ++idx)
          f[idx] += (weight < 0 ? -1.0 : 1.0) * gm(g.node(ix, iy, iz));
  }
  return f;
}

}  // namespace

long suite_post_collision(unsigned long seed, long samples) {
  std::mt19937_64 rng(seed);
  long bad = 0;
  for (long i = 0; i < samples; ++i) {
    const Vec3 v = random_vec(rng, 5.0), vs = random_vec(rng, 5.0);
    const Vec3 sigma = random_unit(rng);
    auto [vp, vsp] = post_collision(v, vs, sigma);
    const double e0 = norm2(v) + norm2(vs), e1 = norm2(vp) + norm2(vsp);
    const Vec3 p0 = v + vs, p1 = vp + vsp;
    const double scale = e0 + 1.0;
    if (std::fabs(e1 - e0) > 1e-12 * scale) ++bad;
    if (norm(p1 - p0) > 1e-12 * (norm(p0) + 1.0)) ++bad;
  }
  return bad;
}

long suite_pinch(const KernelConfig& k, long samples) {
  long bad = 0;
  for (long i = 1; i <= samples; ++i) {
    const double theta = 0.5 * 3.14159265358979323846 * double(i) / double(samples);
    const double pinched = std::pow(theta, 1.0 + 2.0 * k.s) * std::sin(theta) * k.b(theta);
    if (!(pinched >= 1.0 / k.K - 1e-12 && pinched <= k.K + 1e-12)) ++bad;
  }
  return bad;
}

long suite_primededuct(const KernelConfig& k, unsigned long seed, long samples,
                       const std::vector<double>& p_values) {
  std::mt19937_64 rng(seed);
  long bad = 0;
  for (long i = 0; i < samples; ++i) {
    const Vec3 v = random_vec(rng, 5.0), vs = random_vec(rng, 5.0);
    Vec3 sigma = random_unit(rng);
    const Vec3 u = v - vs;
    if (norm(u) > 0 && dot(sigma, u) < 0.0) sigma = -sigma;  // theta <= pi/2 convention
    const CollisionGeometry g = make_collision_geometry(v, vs, sigma);
    for (double p : p_values)
      if (!check_primededuct(g, p)) ++bad;
  }
  return bad;
}

long suite_theta_bound(const KernelConfig& k, unsigned long seed, long samples,
                       const std::vector<double>& p_values) {
  std::mt19937_64 rng(seed);
  std::vector<Vec3> vs_list(2 * samples);
  for (long i = 0; i < 2 * samples; ++i) vs_list[i] = random_vec(rng, 5.0);
  long bad = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : bad)
  for (long i = 0; i < samples; ++i)
    for (double p : p_values)
      if (!check_theta_bound(k, vs_list[2 * i], vs_list[2 * i + 1], p)) ++bad;
  return bad;
}

long suite_landau_moment(const KernelConfig& k, unsigned long seed, int fields,
                         const std::vector<double>& p_values) {
  std::mt19937_64 rng(seed);
  KernelConfig kk = k;
  kk.lambda = 1.0;
  const VelocityGrid grid(16, 7.0);
  long bad = 0;
  for (int i = 0; i < fields; ++i) {
    GaussianMixture gm = random_mixture(rng);
    Distribution f = gm.sample(grid);
    GridField ql = q_landau_conservative(f, kk);
    for (double p : p_values) {
      double lhs = 0.0;
      std::size_t idx = 0;
      for (int iz = 0; iz < grid.N; ++iz)
        for (int iy = 0; iy < grid.N; ++iy)
          for (int ix = 0; ix < grid.N; ++ix, ++idx)
            lhs += ql[idx] * std::pow(bracket2(grid.node(ix, iy, iz)), 0.5 * p);
      lhs *= grid.cell_volume();
      const double rhs = -kk.lambda * p * weighted_l1(f, 0.0) * weighted_l1(f, p + kk.gamma) +
                         kk.lambda * p * (4.0 * p + 2.0) * weighted_l1(f, 2.0) *
                             weighted_l1(f, p);
      // allowance for the O(h^2) moment error of the discrete operator
      const double slack = 1e-2 * kk.lambda * p * (4.0 * p + 2.0) * weighted_l1(f, 2.0) *
                           weighted_l1(f, p);
      if (!(lhs <= rhs + slack)) ++bad;
    }
  }
  return bad;
}

long suite_interp_inequality(const KernelConfig& k, unsigned long seed, int fields,
                             const std::vector<double>& lambdas) {
  std::mt19937_64 rng(seed);
  const VelocityGrid grid(16, 7.0);
  long bad = 0;
  for (int i = 0; i < fields; ++i) {
    GridField f = random_signed_field(rng, grid);
    for (double lam : lambdas)
      if (!interp_inequality_check(f, lam, k.s)) ++bad;
  }
  return bad;
}

long suite_sandwich(const KernelConfig& k, unsigned long seed, int fields, double eps) {
  std::mt19937_64 rng(seed);
  const VelocityGrid grid(16, 7.0);
  std::uniform_int_distribution<int> mdist(0, 1);
  std::uniform_real_distribution<double> ldist(0.0, 2.0);
  long bad = 0;
  for (int i = 0; i < fields; ++i) {
    GridField f = random_signed_field(rng, grid);
    const double m = mdist(rng), l = ldist(rng);
    const double lo = sobolev_norm(f, m + k.s, l);
    const double mid = eps_norm(f, eps, m, l, k.s);
    const double hi = sobolev_norm(f, m + 1.0, l);
    if (!(lo <= mid * (1 + 1e-12) && mid <= 2.0 * hi * (1 + 1e-12))) ++bad;
  }
  return bad;
}

long suite_weight_monotonicity() {
  long bad = 0;
  for (double s : {0.25, 0.5, 0.75})
    for (double gamma : {1.0, 2.0}) {
      const WeightParams p{s, gamma};
      for (int m = 0; m <= 3; ++m) {
        double prev_phi = -1e300, prev_psi = -1e300, prev_vphi = -1e300, prev_rho = -1e300;
        for (double l = 0.0; l <= 10.0; l += 0.5) {
          const double vphi = varphi(m, l, p);
          const double ph = phi(m, l, p);
          const double ps = psi(m, l, p);
          if (ph < prev_phi - 1e-9 || ps < prev_psi - 1e-9 || vphi < prev_vphi - 1e-9) ++bad;
          prev_phi = ph;
          prev_psi = ps;
          prev_vphi = vphi;
          if (m >= 1) {
            const double rh = rho(m, l, p);
            if (rh < prev_rho - 1e-9) ++bad;
            prev_rho = rh;
          }
          if (aux_x(l, p) < aux_x(std::fmax(l - 0.5, 0.0), p) - 1e-9) ++bad;
          if (aux_z(l, p) < aux_z(std::fmax(l - 0.5, 0.0), p) - 1e-9) ++bad;
        }
      }
    }
  return bad;
}

}  // namespace boltz
