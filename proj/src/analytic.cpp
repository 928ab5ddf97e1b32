#include "boltz/analytic.hpp"

#include <cmath>
#include <numbers>

#include "boltz/error.hpp"

namespace boltz {

GaussianMixture::GaussianMixture(std::vector<Component> comps) : comps_(std::move(comps)) {
  for (const auto& c : comps_) {
    if (!(c.weight > 0.0)) throw ConfigError("mixture: component weights must be positive");
    if (!(c.temps.x > 0.0) || !(c.temps.y > 0.0) || !(c.temps.z > 0.0))
      throw ConfigError("mixture: temperatures must be positive");
  }
  if (comps_.empty()) throw ConfigError("mixture: needs at least one component");
}

GaussianMixture GaussianMixture::isotropic(double rho, const Vec3& u, double T) {
  return GaussianMixture({Component{rho, u, {T, T, T}}});
}

double GaussianMixture::operator()(const Vec3& v) const {
  double acc = 0.0;
  const double c0 = std::pow(2.0 * std::numbers::pi, -1.5);
  for (const auto& c : comps_) {
    const Vec3 d = v - c.mean;
    const double q = d.x * d.x / c.temps.x + d.y * d.y / c.temps.y + d.z * d.z / c.temps.z;
    acc += c.weight * c0 / std::sqrt(c.temps.x * c.temps.y * c.temps.z) * std::exp(-0.5 * q);
  }
  return acc;
}

Vec3 GaussianMixture::gradient(const Vec3& v) const {
  Vec3 acc;
  const double c0 = std::pow(2.0 * std::numbers::pi, -1.5);
  for (const auto& c : comps_) {
    const Vec3 d = v - c.mean;
    const double q = d.x * d.x / c.temps.x + d.y * d.y / c.temps.y + d.z * d.z / c.temps.z;
    const double val = c.weight * c0 / std::sqrt(c.temps.x * c.temps.y * c.temps.z) *
                       std::exp(-0.5 * q);
    acc += Vec3{-d.x / c.temps.x, -d.y / c.temps.y, -d.z / c.temps.z} * val;
  }
  return acc;
}

std::array<double, 6> GaussianMixture::hessian(const Vec3& v) const {
  std::array<double, 6> out{};
  const double c0 = std::pow(2.0 * std::numbers::pi, -1.5);
  for (const auto& c : comps_) {
    const Vec3 d = v - c.mean;
    const double gx = -d.x / c.temps.x, gy = -d.y / c.temps.y, gz = -d.z / c.temps.z;
    const double q = d.x * d.x / c.temps.x + d.y * d.y / c.temps.y + d.z * d.z / c.temps.z;
    const double val = c.weight * c0 / std::sqrt(c.temps.x * c.temps.y * c.temps.z) *
                       std::exp(-0.5 * q);
    out[0] += val * (gx * gx - 1.0 / c.temps.x);
    out[1] += val * (gy * gy - 1.0 / c.temps.y);
    out[2] += val * (gz * gz - 1.0 / c.temps.z);
    out[3] += val * gx * gy;
    out[4] += val * gx * gz;
    out[5] += val * gy * gz;
  }
  return out;
}

double GaussianMixture::support_radius(double cut) const {
  double peak = 0.0;
  for (const auto& c : comps_) peak = std::fmax(peak, (*this)(c.mean));
  const double floor_val = cut * peak;
  double r = 0.0;
  for (const auto& c : comps_) {
    const double tmax = std::fmax(c.temps.x, std::fmax(c.temps.y, c.temps.z));
    const double c0 = std::pow(2.0 * std::numbers::pi, -1.5);
    const double amp = c.weight * c0 / std::sqrt(c.temps.x * c.temps.y * c.temps.z);
    // amp exp(-d^2 / (2 tmax)) = floor  =>  d = sqrt(2 tmax log(amp/floor))
    const double arg = std::log(std::fmax(amp / floor_val, 1.0));
    r = std::fmax(r, norm(c.mean) + std::sqrt(2.0 * tmax * arg));
  }
  return r;
}

Distribution GaussianMixture::sample(const VelocityGrid& g) const {
  GridField f(g);
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx) f[idx] = (*this)(g.node(ix, iy, iz));
  return Distribution(f);
}

}  // namespace boltz
