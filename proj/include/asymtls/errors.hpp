#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace asymtls {

/// Integration or analysis broke down numerically (step-size underflow,
/// nonfinite state, record too short).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}

  /// Simulation time at which the failure was detected, NaN if not applicable.
  [[nodiscard]] double time() const noexcept { return time_; }

 private:
  double time_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace asymtls
