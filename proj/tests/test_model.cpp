#include "asymtls/model.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "approx.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace asymtls;
using asymtls::testing::rel;

namespace {

SystemParams system_with_split(double split, double d_ab = 1.0, double omega0 = 1.0) {
  SystemParams s;
  s.omega0 = omega0;
  s.d_aa = 0.1;
  s.d_bb = 0.1 + split;
  s.d_ab = d_ab;
  return s;
}

}  // namespace

TEST_CASE("model: kappa by substitution") {
  CHECK(compute_kappa(system_with_split(0.0), {3.0, 0.7}) == 0.0);
  CHECK(compute_kappa(system_with_split(0.2), {1.0, 1.0}) == rel(0.2).epsilon(1e-15));
  CHECK(compute_kappa(system_with_split(-0.3), {2.0, 0.5}) == rel(-1.2).epsilon(1e-15));
  CHECK_THROWS_AS(compute_kappa(system_with_split(0.1), {NAN, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(compute_kappa(system_with_split(0.1), {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("model: conventional limit of the Rabi frequency") {
  const auto sym = system_with_split(0.0);
  CHECK(rabi_frequency(sym, {1.0, 1.0}, 1) == 1.0);
  CHECK(rabi_frequency(sym, {0.37, 1.0}, 2) == 0.0);
  CHECK(rabi_frequency(sym, {0.37, 1.0}, 5) == 0.0);
  CHECK_THROWS_AS(rabi_frequency(sym, {1.0, 1.0}, 0), std::invalid_argument);
}

TEST_CASE("model: Rabi frequency vanishes on the first J_1 zero") {
  const double zero = oracle::first_j1_zero();
  const auto sys = system_with_split(zero);
  const double omega_r = rabi_frequency(sys, {1.0, 1.0}, 1);
  CHECK(std::abs(omega_r) < 1e-4);
}

TEST_CASE("model: series branch is continuous across the threshold") {
  for (int m = 1; m <= 4; ++m) {
    for (double k : {kKappaSeriesThreshold * (1.0 - 1e-9), kKappaSeriesThreshold * (1.0 + 1e-9)}) {
      const double oracle_ratio = m * oracle::bessel_series(m, k) / k;
      CAPTURE(m);
      CAPTURE(k);
      CHECK(std::abs(bessel_ratio(m, k) - oracle_ratio) <= 1e-12 * std::abs(oracle_ratio));
    }
  }
}

TEST_CASE("model: derived parameters") {
  const auto sys = system_with_split(0.4, 0.05, 1.0);
  SUBCASE("exact resonance") {
    const auto p = derived(sys, {1.0, 1.0}, 1);
    CHECK(p.delta == 0.0);
    CHECK(p.omega_gen == std::abs(p.omega_r));
  }
  SUBCASE("second subharmonic") {
    const auto p = derived(sys, {1.0, 0.5}, 2);
    CHECK(p.delta == 0.0);
    CHECK(p.m == 2);
  }
  SUBCASE("Pythagorean combination") {
    auto s = system_with_split(0.0, 0.1);
    const auto p = derived(s, {1.0, 0.9}, 1);
    CHECK(p.delta == rel(0.1).epsilon(1e-14));
    CHECK(p.omega_r == rel(0.1).epsilon(1e-15));
    CHECK(p.omega_gen == rel(0.1414213562373095).epsilon(1e-14));
  }
}

TEST_CASE("model: dominance ratio") {
  const auto sys = system_with_split(0.156, 0.05);
  SUBCASE("exact resonance gives the infinity sentinel") {
    CHECK(std::isinf(resonance_dominance(sys, {1.0, 0.5}, 2)));
  }
  SUBCASE("symmetric limit n = 1") {
    auto sym = system_with_split(0.0, 0.05);
    CHECK(resonance_dominance(sym, {1.0, 0.8}, 1) == rel(std::abs(0.05 / (2.0 * 0.2))).epsilon(1e-14));
  }
  SUBCASE("series-oracle substitution") {
    // kappa = 1 * 0.156 / 0.52 = 0.3
    const double kappa = 0.3;
    const double expected = std::abs(1.0 * 0.05 * 2.0 * oracle::bessel_series(2, kappa) / (kappa * (1.0 - 2 * 0.52)));
    CHECK(compute_kappa(sys, {1.0, 0.52}) == rel(kappa).epsilon(1e-14));
    CHECK(resonance_dominance(sys, {1.0, 0.52}, 2) == rel(expected).epsilon(1e-12));
  }
}

TEST_CASE("model: isolation report flags a suppressed first resonance") {
  const double zero = 3.83;
  SystemParams sys;
  sys.omega0 = 1.0;
  sys.d_aa = 0.0;
  sys.d_bb = zero;
  sys.d_ab = 0.01;
  const DriveParams drive{1.0, 1.0};
  const auto report = resonance_isolation(sys, drive, 1);
  CHECK(report.entries.size() == 6);
  CHECK(report.entries[0].ratio == std::numeric_limits<double>::infinity());
  // the m = 2 harmonic is nearly resonant-strength compared with the vanishing m = 1
  CHECK(std::abs(rabi_frequency(sys, drive, 1)) < 0.1 * std::abs(rabi_frequency(sys, drive, 2)));
}

TEST_CASE("model: property checks over random inputs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    SystemParams sys;
    sys.omega0 = pos(rng);
    sys.d_aa = u(rng);
    sys.d_bb = u(rng);
    sys.d_ab = u(rng);
    if (sys.d_ab == 0.0) sys.d_ab = 0.5;
    DriveParams drive{pos(rng), pos(rng)};
    const int m = 1 + trial % 4;
    const auto p = derived(sys, drive, m);
    CHECK(p.omega_gen >= std::abs(p.delta));
    CHECK(p.omega_gen >= std::abs(p.omega_r));
    const double residual = p.omega_gen * p.omega_gen - p.delta * p.delta - p.omega_r * p.omega_r;
    CHECK(std::abs(residual) <= 4e-16 * p.omega_gen * p.omega_gen + 1e-300);

    // kappa scales with E
    const DriveParams scaled{3.0 * drive.e_amp, drive.omega};
    CHECK(compute_kappa(sys, scaled) == rel(3.0 * compute_kappa(sys, drive)).epsilon(1e-14));

    // parity: Omega_R(-kappa) = (-1)^{m+1} Omega_R(kappa)
    SystemParams flipped = sys;
    std::swap(flipped.d_aa, flipped.d_bb);
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    CHECK(rabi_frequency(flipped, drive, m) == rel(sign * p.omega_r).epsilon(1e-12));

    // symmetric degeneration
    SystemParams sym = sys;
    sym.d_bb = sym.d_aa;
    CHECK(compute_kappa(sym, drive) == 0.0);
    CHECK(rabi_frequency(sym, drive, 1) == drive.e_amp * sym.d_ab);
    CHECK(rabi_frequency(sym, drive, 2) == 0.0);
  }
}

TEST_CASE("model: Rabi frequency is not linear in E at finite kappa") {
  auto sys = system_with_split(1.0);
  const double single = rabi_frequency(sys, {1.0, 1.0}, 1);
  const double doubled = rabi_frequency(sys, {2.0, 1.0}, 1);
  CHECK(std::abs(doubled - 2.0 * single) > 1e-6);
}

TEST_CASE("model: resonant design hits its targets") {
  const auto d = design_resonant_system(1.0, 2, 0.5, 0.005);
  CHECK(compute_kappa(d.sys, d.drive) == rel(0.5).epsilon(1e-14));
  CHECK(rabi_frequency(d.sys, d.drive, 2) == rel(0.005).epsilon(1e-13));
  CHECK(d.drive.omega == 0.5);
}

TEST_CASE("model: validation") {
  SystemParams s;
  s.d_ab = 0.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.d_ab = 1.0;
  s.omega0 = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.omega0 = 1.0;
  s.tau = -2.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  CHECK_THROWS_AS((DriveParams{-1.0, 1.0}.validate()), std::invalid_argument);
}
