#include "boltz/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace boltz {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

namespace {

double gl16_panel(const std::function<double(double)>& f, double a, double b) {
  static std::vector<double> x, w;
  if (x.empty()) gauss_legendre(16, x, w);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 16; ++i) acc += w[i] * f(mid + half * x[i]);
  return acc * half;
}

}  // namespace

double integrate_log_panels(const std::function<double(double)>& f, double lo, double hi,
                            int panels_per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("integrate_log_panels: bad range");
  const double decades = std::log10(hi / lo);
  const int n_panels = std::max(1, int(std::ceil(decades * panels_per_decade)));
  const double step = std::log(hi / lo) / n_panels;
  double acc = 0.0;
  for (int p = 0; p < n_panels; ++p) {
    const double a = lo * std::exp(p * step);
    const double b = lo * std::exp((p + 1) * step);
    // integrate in t = log(theta): f(e^t) e^t dt
    acc += gl16_panel([&](double t) { return f(std::exp(t)) * std::exp(t); }, std::log(a),
                      std::log(b));
  }
  return acc;
}

double integrate_singular_at_zero(const std::function<double(double)>& f, double hi,
                                  double rel_tol) {
  double acc = 0.0;
  double b = hi;
  for (int k = 0; k < 2000; ++k) {
    const double a = 0.5 * b;
    const double part = gl16_panel(f, a, b);
    acc += part;
    if (k > 8 && std::fabs(part) < rel_tol * std::fabs(acc)) break;
    b = a;
    if (b < 1e-300) break;
  }
  return acc;
}

}  // namespace boltz
