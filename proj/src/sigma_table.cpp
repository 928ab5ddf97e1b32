#include "boltz/sigma_table.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "boltz/error.hpp"
#include "boltz/quadrature.hpp"

namespace boltz {

namespace {
constexpr double pi = std::numbers::pi;
}

AngularQuadrature AngularQuadrature::make(const std::vector<double>& breakpoints,
                                          int nodes_per_panel, int n_azimuth) {
  if (breakpoints.size() < 2) throw ConfigError("angular quadrature: need >= 2 breakpoints");
  std::vector<double> bp = breakpoints;
  std::sort(bp.begin(), bp.end());
  if (!(bp.front() > 0.0)) throw ConfigError("angular quadrature: breakpoints must be positive");

  std::vector<double> gx, gw;
  gauss_legendre(nodes_per_panel, gx, gw);

  AngularQuadrature q;
  q.n_azimuth = n_azimuth;
  for (std::size_t p = 0; p + 1 < bp.size(); ++p) {
    const double la = std::log(bp[p]), lb = std::log(bp[p + 1]);
    if (!(lb > la)) continue;
    const double mid = 0.5 * (la + lb), half = 0.5 * (lb - la);
    for (int i = 0; i < nodes_per_panel; ++i) {
      const double t = std::exp(mid + half * gx[i]);
      q.theta_nodes.push_back(t);
      // d theta = theta d(log theta); weight includes sin(theta) for dsigma
      q.theta_weights.push_back(gw[i] * half * t * std::sin(t));
    }
  }
  return q;
}

AngularQuadrature AngularQuadrature::make_range(double lo, double hi, int nodes_per_panel,
                                                int n_azimuth, int panels_per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("angular quadrature: bad range");
  const int n_panels =
      std::max(1, int(std::ceil(std::log10(hi / lo) * panels_per_decade)));
  std::vector<double> bp(n_panels + 1);
  for (int i = 0; i <= n_panels; ++i)
    bp[i] = lo * std::exp(std::log(hi / lo) * double(i) / n_panels);
  bp.back() = hi;
  return make(bp, nodes_per_panel, n_azimuth);
}

AngularQuadrature AngularQuadrature::make_full_sphere(int n_polar, int n_azimuth) {
  std::vector<double> gx, gw;
  gauss_legendre(n_polar, gx, gw);
  AngularQuadrature q;
  q.n_azimuth = n_azimuth;
  const double mid = 0.5 * pi, half = 0.5 * pi;
  for (int i = 0; i < n_polar; ++i) {
    const double t = mid + half * gx[i];
    q.theta_nodes.push_back(t);
    q.theta_weights.push_back(gw[i] * half * std::sin(t));
  }
  return q;
}

SigmaTable SigmaTable::build(const KernelConfig& k, const AngularQuadrature& q) {
  SigmaTable t;
  const double az_w = 2.0 * pi / q.n_azimuth;
  t.nodes.reserve(q.theta_nodes.size() * q.n_azimuth);
  for (std::size_t i = 0; i < q.theta_nodes.size(); ++i) {
    const double theta = q.theta_nodes[i];
    const double profile = theta <= 0.5 * pi ? k.b(theta) : 0.0;
    const double ct = std::cos(theta), st = std::sin(theta);
    for (int a = 0; a < q.n_azimuth; ++a) {
      const double phi = 2.0 * pi * a / q.n_azimuth;
      Node n;
      n.cos_theta = ct;
      n.sin_theta = st;
      n.cos_phi = std::cos(phi);
      n.sin_phi = std::sin(phi);
      n.w = q.theta_weights[i] * az_w;
      n.wb = n.w * profile;
      n.theta = theta;
      t.nodes.push_back(n);
      t.total_w += n.w;
      t.total_wb += n.wb;
    }
  }
  return t;
}

}  // namespace boltz
