#include "boltz/weights.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace boltz {

namespace {
constexpr double pi = std::numbers::pi;
}

double aux_x(double l, const WeightParams& p) {
  return (2.0 * l + 7.0) / p.s - (1.0 - p.s) / p.s * (l + 0.5 * p.gamma);
}

double aux_y(double l, const WeightParams& p) {
  return (3.0 * aux_x(l, p) - (p.s + 2.0) * l) / (1.0 - p.s);
}

double aux_z(double l, const WeightParams& p) { return 2.0 * l + 7.0 + (l + 7.0) / p.s; }

double aux_u(int m, double l, const WeightParams& p) {
  return (m + 2.0) * aux_z(l, p) - (m + 1.0) * l;
}

double phi_s(double l, const WeightParams& p) {
  return ((2.0 * l + 4.0) * (2.0 + p.s) - 2.0 * l) / p.s;
}

double phi(int m, double l, const WeightParams& p) {
  if (m < 0) throw std::domain_error("phi: m must be >= 0");
  if (m == 0) return 2.0 * l + 5.0;
  if (m == 1) return std::fmax(phi_s(aux_x(l, p), p), aux_y(l, p));
  return std::fmax(aux_u(m, l, p), phi(m - 1, aux_z(l, p), p));
}

double psi(int m, double l, const WeightParams& p) {
  if (m < 0) throw std::domain_error("psi: m must be >= 0");
  if (m == 0) return 2.0 * l + p.gamma + 17.0;
  return l + p.gamma + 10.0;
}

double rho(int m, double l, const WeightParams& p) {
  if (m < 1) throw std::domain_error("rho: m must be >= 1");
  return (m + 7.0) * psi(m - 1, aux_z(l, p), p) - (m + 6.0) * (l + p.gamma + 10.0);
}

double varphi(int m, double l, const WeightParams& p) {
  if (m < 0) throw std::domain_error("varphi: m must be >= 0");
  if (m == 0) return phi(5, 2.0 * l + p.gamma + 17.0, p);
  return std::fmax(varphi(m - 1, aux_z(l, p), p), rho(m, l, p));
}

std::string TheoremCheck::describe() const {
  std::ostringstream os;
  os << (ok ? "ok" : "violated") << ": coercivity " << lhs1 << (lhs1 >= rhs1 ? " >= " : " < ")
     << rhs1 << ", weight " << lhs2 << (lhs2 >= rhs2 ? " >= " : " < ") << rhs2;
  return os.str();
}

TheoremCheck theorem_conditions(double l, Theorem which, const WeightParams& p, double Kpinch,
                                double A2) {
  TheoremCheck c;
  const double s = p.s, gamma = p.gamma;
  if (which == Theorem::main3) {
    c.lhs1 = std::pow(4.0 / pi, 2.0 * l - 2.0 * s) * (l - s);
    c.rhs1 = std::pow(2.0, 4.0 - 2.0 * s) * pi * Kpinch / A2;
    c.lhs2 = 2.0 * l;
  } else {
    c.lhs1 = std::pow(4.0 / pi, 2.0 * l + 5.0 - 2.0 * s) * (2.0 * l + 5.0 - 2.0 * s);
    c.rhs1 = std::pow(2.0, 5.0 - 2.0 * s) * pi * Kpinch / A2;
    c.lhs2 = 2.0 * l + 5.0;
  }
  c.rhs2 = s / (1.0 - s) * (gamma + 2.0) + gamma;
  c.ok = c.lhs1 >= c.rhs1 && c.lhs2 >= c.rhs2;
  return c;
}

double minimal_l(Theorem which, const WeightParams& p, double Kpinch, double A2, double l_max) {
  for (double l = 0.0; l <= l_max + 1e-12; l += 0.25)
    if (theorem_conditions(l, which, p, Kpinch, A2).ok) return l;
  return -1.0;
}

}  // namespace boltz
