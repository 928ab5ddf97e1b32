#ifndef BOLTZ_ERROR_HPP
#define BOLTZ_ERROR_HPP

#include <stdexcept>
#include <string>

namespace boltz {

/// Invalid configuration or parameters outside the documented domain.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Runtime numerical failure: blow-up, divergence of an iteration,
/// unstable calibration, quadrature non-convergence, signal underflow.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace boltz

#endif
