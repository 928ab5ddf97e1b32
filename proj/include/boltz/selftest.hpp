#ifndef BOLTZ_SELFTEST_HPP
#define BOLTZ_SELFTEST_HPP

#include <iosfwd>

namespace boltz {

/// Runs the randomized property suites (collision invariances, pointwise
/// inequality samplers, norm properties) with the given seed, printing one
/// line per suite. Returns the number of failed suites.
int selftest(unsigned long seed, std::ostream& out);

}  // namespace boltz

#endif
