#ifndef BOLTZ_QUADRATURE_HPP
#define BOLTZ_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace boltz {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre recurrence. Accurate to machine precision for n <= 64.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Integral of f over [lo, hi] using log-spaced Gauss-Legendre panels
/// (panels_per_decade panels per decade of the interval, order-16 each).
/// Intended for integrands with power-law behaviour toward lo. Requires lo > 0.
double integrate_log_panels(const std::function<double(double)>& f, double lo, double hi,
                            int panels_per_decade = 8);

/// Integral of f over (0, hi] with an integrable power singularity at 0.
/// Geometric panel subdivision toward 0; stops once the running tail
/// contribution falls below rel_tol of the accumulated value.
double integrate_singular_at_zero(const std::function<double(double)>& f, double hi,
                                  double rel_tol = 1e-12);

}  // namespace boltz

#endif
