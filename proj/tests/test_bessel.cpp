#include "asymtls/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "approx.hpp"
#include "doctest.h"
#include "oracles.hpp"

using asymtls::bessel_j;
using asymtls::bessel_row;
using asymtls::testing::rel;

TEST_CASE("bessel: values at the origin") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n = 1; n <= 10; ++n) CHECK(bessel_j(n, 0.0) == 0.0);
  const auto row = bessel_row(3, 0.0);
  CHECK(row.values == std::vector<double>{1.0, 0.0, 0.0, 0.0});
}

TEST_CASE("bessel: first zero of J_1") {
  const double zero = asymtls::oracle::first_j1_zero();
  CHECK(zero == rel(3.831705970207512).epsilon(1e-14));
  CHECK(std::abs(bessel_j(1, 3.831705970207512)) <= 1e-10);
}

TEST_CASE("bessel: row matches 30-term power series at x = 1.5") {
  const auto row = bessel_row(20, 1.5);
  for (int n = 0; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(std::abs(row.values[n] - asymtls::oracle::bessel_series(n, 1.5, 30)) <= 1e-12);
  }
}

TEST_CASE("bessel: series agreement for |x| <= 5") {
  for (double x = -5.0; x <= 5.0; x += 0.125) {
    const auto row = bessel_row(30, x);
    for (int n = 0; n <= 30; ++n) {
      CAPTURE(x);
      CAPTURE(n);
      CHECK(std::abs(row.values[n] - asymtls::oracle::bessel_series(n, x, 40)) <= 1e-12);
    }
  }
}

TEST_CASE("bessel: accuracy against Bessel's integral up to |x| = 50, |n| = 60") {
  double worst = 0.0;
  for (double x : {0.01, 0.7, 3.0, 9.5, 17.25, 25.0, 33.3, 41.0, 49.9, 50.0}) {
    for (int n = -60; n <= 60; n += 3) {
      worst = std::max(worst, std::abs(bessel_j(n, x) - asymtls::oracle::bessel_integral(n, x)));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("bessel: row entries equal single evaluations") {
  for (double x : {0.3, 4.0, 22.0, 48.0}) {
    const auto row = bessel_row(40, x);
    for (int n = 0; n <= 40; ++n) CHECK(std::abs(row.values[n] - bessel_j(n, x)) <= 1e-12);
  }
}

TEST_CASE("bessel: reflection in order and argument") {
  for (double x : {0.2, 1.0, 7.3, 31.0}) {
    for (int n = 0; n <= 25; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(bessel_j(n, -x) == sign * bessel_j(n, x));
      CHECK(bessel_j(-n, x) == sign * bessel_j(n, x));
    }
  }
}

TEST_CASE("bessel: recurrence residual across the row") {
  for (double x = 0.1; x <= 30.0; x += 0.37) {
    const int order_max = static_cast<int>(x) + 25;
    const auto row = bessel_row(order_max, x);
    for (int n = 1; n < order_max; ++n) {
      const double residual = row.values[n - 1] + row.values[n + 1] - (2.0 * n / x) * row.values[n];
      CAPTURE(x);
      CAPTURE(n);
      CHECK(std::abs(residual) <= 1e-10);
    }
  }
}

TEST_CASE("bessel: normalization deficit") {
  for (double x : {0.1, 1.0, 5.0, 20.0}) {
    const int order_max = static_cast<int>(std::ceil(std::abs(x))) + 20;
    const auto row = bessel_row(order_max, x);
    double sum = row.values[0] * row.values[0];
    for (int n = 1; n <= order_max; ++n) sum += 2.0 * row.values[n] * row.values[n];
    CAPTURE(x);
    CHECK(1.0 - sum <= 1e-10);
    CHECK(sum <= 1.0 + 1e-14);
    for (double v : row.values) CHECK(std::abs(v) <= 1.0);
  }
}

TEST_CASE("bessel: errors") {
  CHECK_THROWS_AS(bessel_j(1, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(bessel_row(2, INFINITY), std::invalid_argument);
  CHECK_THROWS_AS(bessel_row(-1, 1.0), std::invalid_argument);
}

TEST_CASE("bessel: tiny arguments do not overflow") {
  const auto row = bessel_row(60, 1e-12);
  CHECK(row.values[0] == rel(1.0));
  CHECK(row.values[1] == rel(5e-13));
  for (double v : row.values) CHECK(std::isfinite(v));
}
