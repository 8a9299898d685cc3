#pragma once

// Independent reference evaluations used only by the test suites. Nothing
// here calls into the library.

#include <cmath>
#include <functional>
#include <numbers>

namespace asymtls::oracle {

/// Truncated power series sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!), n >= 0.
inline double bessel_series(int n, double x, int terms = 30) {
  const bool odd_negative = n < 0 && (n % 2) != 0;
  n = std::abs(n);
  long double half = static_cast<long double>(x) / 2.0L;
  long double term = 1.0L;
  for (int j = 1; j <= n; ++j) term *= half / j;
  long double sum = 0.0L;
  for (int k = 0; k < terms; ++k) {
    sum += term;
    term *= -half * half / (static_cast<long double>(k + 1) * (k + 1 + n));
  }
  return static_cast<double>(odd_negative ? -sum : sum);
}

/// Bessel's integral J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt with the
/// trapezoidal rule on the periodic integrand (exponentially convergent).
inline double bessel_integral(int n, double x, int points = 2048) {
  const double h = std::numbers::pi / points;
  double sum = 0.5 * (1.0 + std::cos(n * std::numbers::pi));  // endpoints t=0 and t=pi
  for (int j = 1; j < points; ++j) {
    const double t = j * h;
    sum += std::cos(n * t - x * std::sin(t));
  }
  return sum / points;
}

/// Plain bisection on a bracketing interval.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// First positive zero of J_1 from the series, bracketed in [3, 4.5].
inline double first_j1_zero() {
  return bisect([](double x) { return bessel_series(1, x, 40); }, 3.0, 4.5);
}

}  // namespace asymtls::oracle
