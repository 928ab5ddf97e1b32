#ifndef BOLTZ_GRID_HPP
#define BOLTZ_GRID_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "boltz/vec3.hpp"

namespace boltz {

/// Uniform cell-centered velocity mesh on [-L, L]^3.
/// Nodes sit at -L + (i + 1/2) h per axis, h = 2L/N, i = 0..N-1.
struct VelocityGrid {
  int N = 0;      ///< points per axis, even, >= 8
  double L = 0.0; ///< half-width of the cube
  double h = 0.0; ///< spacing 2L/N

  VelocityGrid() = default;
  VelocityGrid(int N_, double L_);

  std::size_t size() const { return std::size_t(N) * N * N; }
  double cell_volume() const { return h * h * h; }

  double coord(int i) const { return -L + (i + 0.5) * h; }
  Vec3 node(int ix, int iy, int iz) const { return {coord(ix), coord(iy), coord(iz)}; }

  /// Row-major with x fastest: idx = ix + N*(iy + N*iz).
  std::size_t index(int ix, int iy, int iz) const {
    return std::size_t(ix) + std::size_t(N) * (std::size_t(iy) + std::size_t(N) * iz);
  }
  Vec3 node(std::size_t idx) const {
    int ix = int(idx % N), iy = int((idx / N) % N), iz = int(idx / (std::size_t(N) * N));
    return node(ix, iy, iz);
  }

  bool operator==(const VelocityGrid& o) const { return N == o.N && L == o.L; }
};

/// Real-valued function sampled on a VelocityGrid.
/// Holds f, g, h, error functions F^eps_R, defect fields -- any sign.
class GridField {
 public:
  GridField() = default;
  explicit GridField(const VelocityGrid& g, double fill = 0.0)
      : grid_(g), values_(g.size(), fill) {}

  const VelocityGrid& grid() const { return grid_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// Throws NumericError if any value is NaN/Inf.
  void check_finite(const std::string& context) const;

 private:
  VelocityGrid grid_;
  std::vector<double> values_;
};

/// Moments of a field under the midpoint rule:
/// mass = h^3 sum f, momentum = h^3 sum f v, energy = h^3 sum f |v|^2.
struct Moments {
  double mass = 0.0;
  Vec3 momentum;
  double energy = 0.0;
};

Moments moments(const GridField& f);

/// A non-negative field with positive mass. Tolerates values down to -1e-12
/// (absolute); anything below throws ConfigError.
class Distribution : public GridField {
 public:
  Distribution() = default;
  explicit Distribution(const GridField& f);
  static constexpr double tol_neg = 1e-12;
};

/// Maxwellian rho (2 pi T)^(-3/2) exp(-|v-u|^2 / 2T) sampled at the nodes.
/// Requires rho > 0, T > 0 and the support heuristic |u| + 4 sqrt(T) < L.
Distribution maxwellian(const VelocityGrid& g, double rho, const Vec3& u, double T);

/// Trilinear interpolation with zero extension outside [-L, L]^3.
/// Exact at nodes and on affine functions within a cell.
double interpolate(const GridField& f, const Vec3& p);

/// Field dump. Text: header lines "N=<int>", "L=<float>",
/// "order=row-major-x-fastest", then N^3 whitespace-separated decimal values
/// at 17 significant digits. Binary: same header then little-endian IEEE-754
/// doubles.
void write_field(const GridField& f, const std::string& path, bool binary);
GridField read_field(const std::string& path);

}  // namespace boltz

#endif
