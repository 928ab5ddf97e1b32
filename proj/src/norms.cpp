#include "boltz/norms.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <vector>

#include "boltz/error.hpp"

namespace boltz {

namespace {
constexpr double pi = std::numbers::pi;

// FFTW planning is not thread-safe; executions on distinct buffers are.
std::mutex fftw_plan_mutex;
}  // namespace

double weighted_l1(const GridField& f, double q) {
  const auto& g = f.grid();
  double acc = 0.0;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx) {
        const double val = f[idx];
        if (val == 0.0) continue;
        acc += std::fabs(val) * std::pow(bracket2(g.node(ix, iy, iz)), 0.5 * q);
      }
  return acc * g.cell_volume();
}

double weighted_l2(const GridField& f, double l) {
  const auto& g = f.grid();
  double acc = 0.0;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.N; ++iz)
    for (int iy = 0; iy < g.N; ++iy)
      for (int ix = 0; ix < g.N; ++ix, ++idx) {
        const double val = f[idx];
        if (val == 0.0) continue;
        acc += val * val * std::pow(bracket2(g.node(ix, iy, iz)), l);
      }
  return std::sqrt(acc * g.cell_volume());
}

double llogl(const GridField& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::fabs(f[i]);
    if (a > 0.0) acc += a * std::log1p(a);
  }
  return acc * f.grid().cell_volume();
}

double entropy(const Distribution& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f[i];
    if (v > 0.0) acc += v * std::log(v);  // 0 log 0 := 0
  }
  return acc * f.grid().cell_volume();
}

namespace {

/// |DFT|^2 of the weighted field g = f <v>^l, with ||.||^2 recovered through
/// Parseval: h^3 sum g^2 = (2L)^-3 sum_k |ghat_k|^2 for ghat_k = h^3 sum g e^{-i xi_k x}.
/// Applies `symbol(|xi|)^2` under the sum.
template <class Symbol>
double symbol_norm(const GridField& f, double l, Symbol&& symbol) {
  const auto& g = f.grid();
  const int N = g.N;
  std::vector<std::complex<double>> buf(g.size());
  std::size_t idx = 0;
  for (int iz = 0; iz < N; ++iz)
    for (int iy = 0; iy < N; ++iy)
      for (int ix = 0; ix < N; ++ix, ++idx)
        buf[idx] = f[idx] * std::pow(bracket2(g.node(ix, iy, iz)), 0.5 * l);

  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_plan plan = fftw_plan_dft_3d(N, N, N, reinterpret_cast<fftw_complex*>(buf.data()),
                                      reinterpret_cast<fftw_complex*>(buf.data()), FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  // ghat_k = h^3 * DFT; frequencies xi = pi k / L with k in [-N/2, N/2).
  const double dxi = pi / g.L;
  const double h3 = g.cell_volume();
  double acc = 0.0;
  idx = 0;
  for (int iz = 0; iz < N; ++iz) {
    const int kz = iz < N / 2 ? iz : iz - N;
    for (int iy = 0; iy < N; ++iy) {
      const int ky = iy < N / 2 ? iy : iy - N;
      for (int ix = 0; ix < N; ++ix, ++idx) {
        const int kx = ix < N / 2 ? ix : ix - N;
        const double xi = dxi * std::sqrt(double(kx) * kx + double(ky) * ky + double(kz) * kz);
        const double sym = symbol(xi);
        acc += sym * sym * std::norm(buf[idx]) * h3 * h3;
      }
    }
  }
  const double box = 8.0 * g.L * g.L * g.L;
  return std::sqrt(acc / box);
}

}  // namespace

double sobolev_norm(const GridField& f, double m, double l) {
  return symbol_norm(f, l, [m](double xi) { return std::pow(1.0 + xi * xi, 0.5 * m); });
}

double eps_norm(const GridField& f, double eps, double m, double l, double s) {
  const double a = sobolev_norm(f, m + s, l);
  const double b = sobolev_norm(f, m + 1.0, l);
  return std::sqrt(a * a + std::pow(eps, 2.0 - 2.0 * s) * b * b);
}

double weps_symbol(double xi_abs, double eps, double s) {
  if (xi_abs <= 1.0 / eps) return std::pow(1.0 + xi_abs * xi_abs, 0.5 * s);
  return std::pow(eps, -s);
}

double weps_l2(const GridField& f, double eps, double l, double s) {
  return symbol_norm(f, l, [eps, s](double xi) { return weps_symbol(xi, eps, s); });
}

bool interp_inequality_check(const GridField& f, double lambda, double s) {
  if (!(lambda > 0.0)) throw ConfigError("interp_inequality_check: lambda must be positive");
  const double l2 = weighted_l2(f, 0.0);
  const double hs = sobolev_norm(f, s, 0.0);
  const double l1 = weighted_l1(f, 0.0);
  const double rhs = lambda * hs * hs +
                     (4.0 * pi / 3.0) * std::pow(lambda, -1.5 / s) * l1 * l1;
  return l2 * l2 <= rhs * (1.0 + 1e-12) + 1e-300;
}

}  // namespace boltz
