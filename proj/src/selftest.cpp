#include "boltz/selftest.hpp"

#include <ostream>

#include "boltz/suites.hpp"

namespace boltz {

int selftest(unsigned long seed, std::ostream& out) {
  const KernelConfig k;  // defaults: gamma = 1, s = 0.5, K = 1
  int failures = 0;
  auto report = [&](const char* name, long violations) {
    out << (violations == 0 ? "PASS " : "FAIL ") << name;
    if (violations != 0) out << " (" << violations << " violations)";
    out << "\n";
    if (violations != 0) ++failures;
  };

  report("post_collision invariance (1e6 samples)", suite_post_collision(seed, 1000000));
  report("kernel pinch bounds", suite_pinch(k, 10000));
  report("primededuct inequality (1e5 x {2,3,4.5})",
         suite_primededuct(k, seed + 1, 100000, {2.0, 3.0, 4.5}));
  report("theta moment bound (1e4 x {3,4})", suite_theta_bound(k, seed + 2, 10000, {3.0, 4.0}));
  report("landau moment inequality (50 fields x {3,4,6})",
         suite_landau_moment(k, seed + 3, 50, {3.0, 4.0, 6.0}));
  report("interpolation inequality (100 fields x 3 lambdas)",
         suite_interp_inequality(k, seed + 4, 100, {0.1, 1.0, 10.0}));
  report("eps-norm sandwich (100 fields)", suite_sandwich(k, seed + 5, 100, 0.5));
  report("weight function monotonicity", suite_weight_monotonicity());
  return failures;
}

}  // namespace boltz
