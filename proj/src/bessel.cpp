#include "asymtls/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace asymtls {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleFactor = 1e-250;

}  // namespace

double BesselRow::at(int n) const {
  const int k = std::abs(n);
  if (k > order_max) throw std::out_of_range("BesselRow::at: order outside row");
  const double v = values[static_cast<std::size_t>(k)];
  return (n < 0 && (k % 2) != 0) ? -v : v;
}

int bessel_start_order(int order_max, double x) {
  // The recurrence has to start well above both the requested order and the
  // turning point n ~ |x|, otherwise the dominant Y_n contamination survives.
  const double base = std::max<double>(order_max, std::ceil(std::abs(x)));
  const int start = static_cast<int>(base + std::ceil(10.0 + 2.0 * std::sqrt(base * std::max(std::abs(x), 1.0))));
  return start + (start % 2);  // even, so the normalization sum ends on J_0
}

BesselRow bessel_row(int order_max, double x) {
  if (order_max < 0) throw std::invalid_argument("bessel_row: order_max must be >= 0");
  if (!std::isfinite(x)) throw std::invalid_argument("bessel_row: argument must be finite");

  BesselRow row;
  row.order_max = order_max;
  row.argument = x;
  row.values.assign(static_cast<std::size_t>(order_max) + 1, 0.0);

  if (x == 0.0) {
    row.values[0] = 1.0;
    return row;
  }

  const double ax = std::abs(x);
  const int start = bessel_start_order(order_max, ax);

  // Downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1} from arbitrary seeds,
  // normalized afterwards with J_0 + 2 sum_{k>=1} J_{2k} = 1.
  double next = 0.0;  // J_{k+1}
  double cur = 1e-300;  // J_k
  double norm = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = (2.0 * k / ax) * cur - next;
    next = cur;
    cur = prev;  // now J_{k-1}
    const int n = k - 1;
    if (n <= order_max) row.values[static_cast<std::size_t>(n)] = cur;
    if (n > 0 && n % 2 == 0) norm += 2.0 * cur;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleFactor;
      next *= kRescaleFactor;
      norm *= kRescaleFactor;
      for (int j = n; j <= order_max; ++j) row.values[static_cast<std::size_t>(j)] *= kRescaleFactor;
    }
  }
  norm += cur;  // J_0

  for (double& v : row.values) v /= norm;
  if (x < 0.0) {
    for (int n = 1; n <= order_max; n += 2) row.values[static_cast<std::size_t>(n)] = -row.values[static_cast<std::size_t>(n)];
  }
  return row;
}

double bessel_j(int n, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("bessel_j: argument must be finite");
  return bessel_row(std::abs(n), x).at(n);
}

}  // namespace asymtls
