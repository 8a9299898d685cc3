#pragma once

#include <vector>

namespace asymtls {

/// J_0(x) ... J_{order_max}(x) for a single argument.
struct BesselRow {
  int order_max = 0;
  double argument = 0.0;
  std::vector<double> values;

  /// J_n for |n| <= order_max, negative orders through J_{-n} = (-1)^n J_n.
  [[nodiscard]] double at(int n) const;
};

/// Bessel function of the first kind, integer order. Negative orders and
/// negative arguments are reduced by reflection. Throws std::invalid_argument
/// for a nonfinite argument.
double bessel_j(int n, double x);

/// Whole row J_0..J_{order_max} by normalized downward (Miller) recurrence.
BesselRow bessel_row(int order_max, double x);

/// First index used by the downward recurrence for a given row request.
int bessel_start_order(int order_max, double x);

}  // namespace asymtls
