#ifndef BOLTZ_NORMS_HPP
#define BOLTZ_NORMS_HPP

#include "boltz/grid.hpp"

namespace boltz {

/// ||f||_{L^1_q} = h^3 sum |f| <v>^q.
double weighted_l1(const GridField& f, double q);

/// ||f||_{L^2_l} = (h^3 sum f^2 <v>^{2l})^{1/2}.
double weighted_l2(const GridField& f, double l);

/// ||f||_{L log L} = h^3 sum |f| log(1 + |f|).
double llogl(const GridField& f);

/// h^3 sum f log f with 0 log 0 := 0. Requires a Distribution (f >= 0).
double entropy(const Distribution& f);

/// Weighted Sobolev norm ||<D>^m <.>^l f||_{L^2}: DFT of the zero-extended
/// weighted field g = f <v>^l on the box, symbol <xi>^m over the discrete
/// frequencies xi = pi k / L.
double sobolev_norm(const GridField& f, double m, double l);

/// ||f||^2_{eps,m,l} = ||f||^2_{H^{m+s}_l} + eps^{2-2s} ||f||^2_{H^{m+1}_l}.
double eps_norm(const GridField& f, double eps, double m, double l, double s);

/// L^2_l norm with the W^eps symbol
/// W^eps(xi) = <xi>^s for |xi| <= 1/eps, eps^{-s} for |xi| > 1/eps.
double weps_l2(const GridField& f, double eps, double l, double s);

/// The W^eps symbol itself (exposed for tests).
double weps_symbol(double xi_abs, double eps, double s);

/// Interpolation inequality ||f||^2_{L^2} <= lambda ||f||^2_{H^s}
///   + (4 pi / 3) lambda^{-3/(2s)} ||f||^2_{L^1}, checked discretely.
bool interp_inequality_check(const GridField& f, double lambda, double s);

}  // namespace boltz

#endif
