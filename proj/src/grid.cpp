#include "boltz/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "boltz/error.hpp"

namespace boltz {

VelocityGrid::VelocityGrid(int N_, double L_) : N(N_), L(L_) {
  if (N < 8 || N % 2 != 0) throw ConfigError("grid: N must be even and >= 8");
  if (!(L > 0.0)) throw ConfigError("grid: L must be positive");
  h = 2.0 * L / N;
}

void GridField::check_finite(const std::string& context) const {
  for (double v : values_)
    if (!std::isfinite(v)) throw NumericError(context + ": non-finite field value");
}

Moments moments(const GridField& f) {
  const auto& g = f.grid();
  Moments m;
  const double vol = g.cell_volume();
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx) {
        const double val = f[idx];
        if (val == 0.0) continue;
        const Vec3 v = g.node(ix, iy, iz);
        m.mass += val;
        m.momentum += v * val;
        m.energy += val * norm2(v);
      }
  m.mass *= vol;
  m.momentum = m.momentum * vol;
  m.energy *= vol;
  return m;
}

Distribution::Distribution(const GridField& f) : GridField(f) {
  double mn = 0.0;
  for (double v : values()) mn = std::fmin(mn, v);
  if (mn < -tol_neg)
    throw ConfigError("distribution: negative values beyond tolerance, min = " +
                      std::to_string(mn));
  if (!(moments(*this).mass > 0.0)) throw ConfigError("distribution: mass must be positive");
}

Distribution maxwellian(const VelocityGrid& g, double rho, const Vec3& u, double T) {
  if (!(rho > 0.0) || !(T > 0.0)) throw ConfigError("maxwellian: rho and T must be positive");
  if (norm(u) + 4.0 * std::sqrt(T) >= g.L)
    throw ConfigError("maxwellian: support margin violated, need |u| + 4 sqrt(T) < L");
  GridField f(g);
  const double pref = rho * std::pow(2.0 * std::numbers::pi * T, -1.5);
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx) {
        const Vec3 v = g.node(ix, iy, iz);
        f[idx] = pref * std::exp(-norm2(v - u) / (2.0 * T));
      }
  return Distribution(f);
}

double interpolate(const GridField& f, const Vec3& p) {
  const auto& g = f.grid();
  // fractional cell coordinates relative to the node lattice
  const double fx = (p.x + g.L) / g.h - 0.5;
  const double fy = (p.y + g.L) / g.h - 0.5;
  const double fz = (p.z + g.L) / g.h - 0.5;
  const int ix = int(std::floor(fx)), iy = int(std::floor(fy)), iz = int(std::floor(fz));
  const double tx = fx - ix, ty = fy - iy, tz = fz - iz;

  auto sample = [&](int jx, int jy, int jz) -> double {
    if (jx < 0 || jy < 0 || jz < 0 || jx >= g.N || jy >= g.N || jz >= g.N) return 0.0;
    return f[g.index(jx, jy, jz)];
  };
  double acc = 0.0;
  for (int dz = 0; dz <= 1; ++dz)
    for (int dy = 0; dy <= 1; ++dy)
      for (int dx = 0; dx <= 1; ++dx) {
        const double w = (dx ? tx : 1.0 - tx) * (dy ? ty : 1.0 - ty) * (dz ? tz : 1.0 - tz);
        if (w != 0.0) acc += w * sample(ix + dx, iy + dy, iz + dz);
      }
  return acc;
}

void write_field(const GridField& f, const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw ConfigError("write_field: cannot open " + path);
  const auto& g = f.grid();
  char header[128];
  std::snprintf(header, sizeof header, "N=%d\nL=%.17g\norder=row-major-x-fastest\n", g.N, g.L);
  out << header;
  if (binary) {
    out.write(reinterpret_cast<const char*>(f.values().data()),
              std::streamsize(f.size() * sizeof(double)));
  } else {
    char buf[40];
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", f[i]);
      out << buf << ((i + 1) % 8 == 0 ? '\n' : ' ');
    }
    out << '\n';
  }
}

GridField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("read_field: cannot open " + path);
  std::string line;
  int N = 0;
  double L = 0.0;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "N=%d", &N) != 1)
    throw ConfigError("read_field: bad N header");
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "L=%lf", &L) != 1)
    throw ConfigError("read_field: bad L header");
  if (!std::getline(in, line) || line != "order=row-major-x-fastest")
    throw ConfigError("read_field: bad order header");
  VelocityGrid g(N, L);
  GridField f(g);
  // Peek: binary payload follows immediately with raw doubles; text payload is
  // ASCII numbers. Try text first, fall back to binary on parse failure.
  const std::streampos payload = in.tellg();
  bool text_ok = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double v;
    if (!(in >> v)) {
      text_ok = false;
      break;
    }
    f[i] = v;
  }
  if (!text_ok) {
    in.clear();
    in.seekg(payload);
    in.read(reinterpret_cast<char*>(f.values().data()),
            std::streamsize(f.size() * sizeof(double)));
    if (in.gcount() != std::streamsize(f.size() * sizeof(double)))
      throw ConfigError("read_field: truncated payload");
  }
  return f;
}

}  // namespace boltz
