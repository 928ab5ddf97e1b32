#ifndef BOLTZ_WEIGHTS_HPP
#define BOLTZ_WEIGHTS_HPP

#include <string>

namespace boltz {

/// Moment-order bookkeeping functions from the well-posedness and error
/// theorems. They map (regularity order, weight) to the L^1 moment order the
/// initial datum must carry. All are total on m >= 0 (integer), l >= 0.
struct WeightParams {
  double s = 0.5;
  double gamma = 1.0;
};

double aux_x(double l, const WeightParams& p);  ///< (2l+7)/s - (1-s)/s (l + gamma/2)
double aux_y(double l, const WeightParams& p);  ///< (3 x(l) - (s+2) l)/(1-s)
double aux_z(double l, const WeightParams& p);  ///< 2l + 7 + (l+7)/s
double aux_u(int m, double l, const WeightParams& p);  ///< (m+2) z(l) - (m+1) l

/// phi at the fractional slot "s": ((2l+4)(2+s) - 2l)/s.
double phi_s(double l, const WeightParams& p);

/// phi(0,l) = 2l+5; phi(1,l) = max{phi_s(x(l)), y(l)};
/// phi(m,l) = max{u(m,l), phi(m-1, z(l))} for m >= 2.
double phi(int m, double l, const WeightParams& p);

/// psi(0,l) = 2l + gamma + 17; psi(m,l) = l + gamma + 10 for m >= 1.
double psi(int m, double l, const WeightParams& p);

/// rho(m,l) = (m+7) psi(m-1, z(l)) - (m+6)(l + gamma + 10), m >= 1.
double rho(int m, double l, const WeightParams& p);

/// varphi(0,l) = phi(5, 2l + gamma + 17);
/// varphi(m,l) = max{varphi(m-1, z(l)), rho(m,l)} for m >= 1.
double varphi(int m, double l, const WeightParams& p);

/// Side conditions of the error theorems.
enum class Theorem { main3, main4 };

struct TheoremCheck {
  bool ok = false;
  double lhs1 = 0, rhs1 = 0;  ///< coercivity-type condition, lhs1 >= rhs1
  double lhs2 = 0, rhs2 = 0;  ///< weight condition, lhs2 >= rhs2
  std::string describe() const;
};

/// main3: (4/pi)^(2l-2s) (l-s) >= 2^(4-2s) pi K / A2  and
///        2l >= s/(1-s) (gamma+2) + gamma.
/// main4: (4/pi)^(2l+5-2s) (2l+5-2s) >= 2^(5-2s) pi K / A2  and
///        2l+5 >= s/(1-s) (gamma+2) + gamma.
TheoremCheck theorem_conditions(double l, Theorem which, const WeightParams& p, double Kpinch,
                                double A2);

/// Smallest l on a 0.25 grid satisfying both conditions (scans [0, l_max]).
/// Returns -1 if none found.
double minimal_l(Theorem which, const WeightParams& p, double Kpinch, double A2,
                 double l_max = 64.0);

}  // namespace boltz

#endif
