#include "asymtls/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "asymtls/analysis.hpp"
#include "asymtls/errors.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace asymtls;
using asymtls::testing::max_abs_diff;
using asymtls::testing::oracle_rabi;
using asymtls::testing::resonant;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> pa(const AmplitudeTrajectory& t) { return population(t).p_a; }

double drive_periods(const DriveParams& d, double n) { return n * 2.0 * kPi / d.omega; }

}  // namespace

TEST_CASE("dynamics: initial state must be normalized") {
  CHECK_NOTHROW(InitialState::excited().validate());
  CHECK_NOTHROW((InitialState{{std::sqrt(0.5), 0.0}, {0.0, std::sqrt(0.5)}}.validate()));
  CHECK_THROWS_AS((InitialState{{1.0, 0.0}, {1e-5, 0.0}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((InitialState{{NAN, 0.0}, {0.0, 0.0}}.validate()), std::invalid_argument);
}

TEST_CASE("dynamics: free evolution keeps the excited population and rotates the phase") {
  SystemParams sys{1.3, 0.2, -0.1, 0.05, {}};
  DriveParams drive{0.0, 1.0};
  const auto traj = integrate_exact(sys, drive, InitialState::excited(), 50.0, {0.05});
  REQUIRE(traj.size() == 1001);
  CHECK(traj.times.front() == 0.0);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const cplx expected = std::exp(cplx(0.0, -sys.omega0 * traj.times[i] / 2));
    CHECK(std::abs(traj.c_a[i] - expected) < 1e-9);
    CHECK(std::abs(traj.c_b[i]) == 0.0);
  }
}

TEST_CASE("dynamics: population of the excited start is (1, 0) and sums to one within the drift") {
  const auto s = resonant(1, 0.5, 0.01);
  const auto traj = integrate_exact(s.sys, s.drive, InitialState::excited(), 400.0, SamplingPlan::for_run(s.sys, s.drive, 1));
  const auto pop = population(traj);
  CHECK(pop.p_a.front() == 1.0);
  CHECK(pop.p_b.front() == 0.0);
  for (std::size_t i = 0; i < pop.times.size(); ++i) {
    CHECK(std::abs(pop.p_a[i] + pop.p_b[i] - 1.0) <= traj.norm_drift + 1e-15);
    CHECK(pop.p_a[i] >= 0.0);
    CHECK(pop.p_a[i] <= 1.0 + 1e-12);
  }
}

TEST_CASE("dynamics: symmetric resonant drive follows the conventional Rabi solution") {
  const auto s = resonant(1, 0.0, 0.01);
  const double omega_r = s.drive.e_amp * s.sys.d_ab;
  const double t_end = 2.0 * kPi / omega_r;
  const auto traj = integrate_exact(s.sys, s.drive, InitialState::excited(), t_end, SamplingPlan::for_run(s.sys, s.drive, 1));
  const auto p = pa(traj);
  double worst = 0.0, at_half = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double c = std::cos(omega_r * traj.times[i] / 2);
    worst = std::max(worst, std::abs(p[i] - c * c));
  }
  CHECK(worst <= 1e-2);
  // half Rabi period
  const auto half = propagate(s.sys, s.drive, Frame::original, {{1.0, 0.0}, {0.0, 0.0}}, 0.0, kPi / omega_r);
  at_half = std::norm(half.c_a);
  CHECK(at_half <= 1e-3);
}

TEST_CASE("dynamics: modified Rabi frequency from the integrated populations") {
  for (double kappa : {0.5, 1.0}) {
    CAPTURE(kappa);
    const auto s = resonant(1, kappa, 0.01);
    const auto plan = SamplingPlan::for_run(s.sys, s.drive, 1);
    const double expected = oracle_rabi(s, 1);
    const auto traj = integrate_exact(s.sys, s.drive, InitialState::excited(), 6.0 * 2 * kPi / expected, plan);
    const auto est = oscillation_frequency(traj.times, pa(traj), static_cast<std::size_t>(plan.samples_per_drive_period(s.drive)));
    REQUIRE(est.resolved);
    CHECK(std::abs(est.frequency / expected - 1.0) < 0.02);
  }
}

TEST_CASE("dynamics: both frames give the same populations") {
  for (double kappa : {0.0, 0.3, 1.0, 3.0}) {
    CAPTURE(kappa);
    const auto s = resonant(1, kappa, 0.01);
    const auto plan = SamplingPlan::for_run(s.sys, s.drive, 1);
    const double t_end = drive_periods(s.drive, 100);
    const auto exact = integrate_exact(s.sys, s.drive, InitialState::excited(), t_end, plan);
    const auto transformed = integrate_transformed(s.sys, s.drive, InitialState::excited(), t_end, plan);
    CHECK(transformed.frame == Frame::transformed);
    CHECK(max_abs_diff(pa(exact), pa(transformed)) <= (kappa == 0.0 ? 1e-8 : 1e-6));
    CHECK(exact.norm_drift <= 1e-8);
    CHECK(transformed.norm_drift <= 1e-8);
  }
}

TEST_CASE("dynamics: restored transformed amplitudes match the original-frame amplitudes") {
  const auto s = resonant(1, 1.0, 0.02);
  const auto plan = SamplingPlan::for_run(s.sys, s.drive, 1);
  const auto exact = integrate_exact(s.sys, s.drive, InitialState::excited(), 300.0, plan);
  const auto restored = to_original_frame(integrate_transformed(s.sys, s.drive, InitialState::excited(), 300.0, plan));
  CHECK(restored.frame == Frame::original);
  double worst = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    worst = std::max({worst, std::abs(exact.c_a[i] - restored.c_a[i]), std::abs(exact.c_b[i] - restored.c_b[i])});
  }
  CHECK(worst < 1e-6);

  AmplitudeTrajectory bare = integrate_transformed(s.sys, s.drive, InitialState::excited(), 10.0, plan);
  bare.restoration.reset();
  CHECK_THROWS_AS(to_original_frame(bare), std::invalid_argument);
}

TEST_CASE("dynamics: Bessel truncation of the effective field converges") {
  const auto s = resonant(1, 1.0, 0.01);
  const auto plan = SamplingPlan::for_run(s.sys, s.drive, 1);
  SolverOptions o8, o16, o2;
  o8.n_trunc = 8;
  o16.n_trunc = 16;
  o2.n_trunc = 2;
  const double t_end = drive_periods(s.drive, 100);
  const auto p8 = pa(integrate_transformed(s.sys, s.drive, InitialState::excited(), t_end, plan, o8));
  const auto p16 = pa(integrate_transformed(s.sys, s.drive, InitialState::excited(), t_end, plan, o16));
  const auto p2 = pa(integrate_transformed(s.sys, s.drive, InitialState::excited(), t_end, plan, o2));
  CHECK(max_abs_diff(p8, p16) < 1e-8);
  CHECK(max_abs_diff(p2, p16) > max_abs_diff(p8, p16));
  CHECK(SolverOptions{}.truncation_for(1.0) == 9);
  CHECK(SolverOptions{}.truncation_for(-2.5) == 11);
}

TEST_CASE("dynamics: integrating forward then backward recovers the initial state") {
  for (Frame frame : {Frame::original, Frame::transformed}) {
    const auto s = resonant(1, 0.8, 0.01);
    const Amplitudes init{std::polar(std::sqrt(0.3), 0.4), {std::sqrt(0.7), 0.0}};
    const double t_end = drive_periods(s.drive, 200);
    const auto there = propagate(s.sys, s.drive, frame, init, 0.0, t_end);
    const auto back = propagate(s.sys, s.drive, frame, there, t_end, 0.0);
    CHECK(std::abs(back.c_a - init.c_a) < 1e-6);
    CHECK(std::abs(back.c_b - init.c_b) < 1e-6);
  }
}

TEST_CASE("dynamics: error falls with the tolerance at the rate of a fifth-order pair") {
  const auto s = resonant(1, 0.5, 0.05);
  const double t_end = drive_periods(s.drive, 50);
  SolverOptions ref;
  ref.rtol = 1e-14;
  ref.atol = 1e-16;
  const Amplitudes init{{1.0, 0.0}, {0.0, 0.0}};
  const auto truth = propagate(s.sys, s.drive, Frame::original, init, 0.0, t_end, ref);
  auto error_at = [&](double tol) {
    SolverOptions o;
    o.rtol = tol;
    o.atol = tol * 1e-2;
    const auto r = propagate(s.sys, s.drive, Frame::original, init, 0.0, t_end, o);
    return std::abs(r.c_a - truth.c_a) + std::abs(r.c_b - truth.c_b);
  };
  // With error-per-step control the global error is proportional to the
  // tolerance, while the step count grows like tol^(-1/5).
  const double e6 = error_at(1e-6), e8 = error_at(1e-8), e10 = error_at(1e-10);
  const double slope1 = std::log10(e6 / e8) / 2.0, slope2 = std::log10(e8 / e10) / 2.0;
  CAPTURE(e6);
  CAPTURE(e8);
  CAPTURE(e10);
  CHECK(slope1 > 0.7);
  CHECK(slope1 < 1.3);
  CHECK(slope2 > 0.7);
  CHECK(slope2 < 1.3);
}

TEST_CASE("dynamics: identical inputs give identical trajectories") {
  const auto s = resonant(1, 0.5, 0.01);
  const auto plan = SamplingPlan::for_run(s.sys, s.drive, 1);
  const auto a = integrate_exact(s.sys, s.drive, InitialState::excited(), 200.0, plan);
  const auto b = integrate_exact(s.sys, s.drive, InitialState::excited(), 200.0, plan);
  CHECK(a.c_a == b.c_a);
  CHECK(a.c_b == b.c_b);
}

TEST_CASE("dynamics: sampling plan resolves both the carrier and the Rabi envelope") {
  const auto s = resonant(1, 0.5, 0.01);
  const auto plan = SamplingPlan::for_run(s.sys, s.drive, 1);
  const int per_drive = plan.samples_per_drive_period(s.drive);
  CHECK(per_drive >= 32);
  CHECK(std::abs(per_drive * plan.dt - 2 * kPi / s.drive.omega) < 1e-12);
  CHECK(2 * kPi / 0.01 / plan.dt >= 256);
  const auto fast = resonant(1, 0.5, 0.5);
  const auto plan2 = SamplingPlan::for_run(fast.sys, fast.drive, 1);
  CHECK(2 * kPi / 0.5 / plan2.dt >= 256 - 1e-9);
}

TEST_CASE("dynamics: invalid requests and solver breakdown") {
  const auto s = resonant(1, 0.5, 0.01);
  CHECK_THROWS_AS(integrate_exact(s.sys, s.drive, InitialState::excited(), -1.0, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(integrate_exact(s.sys, s.drive, InitialState::excited(), 1.0, {0.0}), std::invalid_argument);
  SolverOptions bad;
  bad.rtol = -1.0;
  CHECK_THROWS_AS(integrate_exact(s.sys, s.drive, InitialState::excited(), 1.0, {0.1}, bad), std::invalid_argument);
  SystemParams nan_sys = s.sys;
  nan_sys.d_aa = NAN;
  CHECK_THROWS_AS(integrate_exact(nan_sys, s.drive, InitialState::excited(), 1.0, {0.1}), std::invalid_argument);

  SolverOptions tiny;
  tiny.max_steps = 10;
  try {
    integrate_exact(s.sys, s.drive, InitialState::excited(), 1000.0, {1.0}, tiny);
    FAIL("expected a numerical failure");
  } catch (const NumericalError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() < 1000.0);
  }
}
