#include "asymtls/analysis.hpp"

#include <cmath>
#include <numbers>

#include "approx.hpp"
#include "doctest.h"

using namespace asymtls;
using asymtls::testing::rel;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("analysis: moving average removes a carrier sampled over whole periods") {
  const std::size_t per = 40;
  std::vector<double> t, v;
  for (std::size_t i = 0; i < 4000; ++i) {
    t.push_back(i * 0.01);
    v.push_back(0.3 + std::sin(2 * kPi * static_cast<double>(i) / per));
  }
  std::vector<double> ts, vs;
  moving_average(t, v, per, ts, vs);
  REQUIRE(vs.size() == v.size() - per + 1);
  for (double x : vs) CHECK(std::abs(x - 0.3) < 1e-12);
}

TEST_CASE("analysis: frequency of a slow cosine under a fast carrier") {
  const double slow = 0.013, fast = 1.0;
  const double dt = 2 * kPi / fast / 64;
  std::vector<double> t, v;
  for (int i = 0; i < 200000; ++i) {
    const double x = i * dt;
    t.push_back(x);
    v.push_back(std::pow(std::cos(slow * x / 2), 2) + 0.05 * std::cos(fast * x));
  }
  const auto est = oscillation_frequency(t, v, 64);
  REQUIRE(est.resolved);
  CHECK(est.frequency == rel(slow).epsilon(1e-3));
  CHECK(est.amplitude == rel(0.5).epsilon(1e-2));
  CHECK(est.midpoint == rel(0.5).epsilon(1e-2));
}

TEST_CASE("analysis: a constant signal is unresolved with an upper bound") {
  std::vector<double> t(1000), v(1000, 0.7);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
  const auto est = oscillation_frequency(t, v, 10);
  CHECK_FALSE(est.resolved);
  // bound from the smoothed record, which loses window - 1 samples
  CHECK(est.frequency == rel(kPi / 990.0));
}

TEST_CASE("analysis: fewer than two crossings leaves the estimate unresolved") {
  std::vector<double> t, v;
  for (int i = 0; i < 1000; ++i) {
    t.push_back(i);
    v.push_back(std::cos(kPi * i / 1500.0));
  }
  CHECK_FALSE(oscillation_frequency(t, v, 4).resolved);
}
