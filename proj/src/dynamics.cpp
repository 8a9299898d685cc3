#include "asymtls/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

#include "asymtls/bessel.hpp"
#include "asymtls/errors.hpp"
#include "asymtls/kernels.hpp"

namespace asymtls {

namespace {

using State = std::array<double, 4>;  // Re C_a, Im C_a, Re C_b, Im C_b

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Dense output (Hairer & Wanner's continuous extension).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

/// i dC/dt = H(t) C in the original frame.
struct OriginalRhs {
  double half_omega0, e_d_aa, e_d_bb, e_d_ab, omega;

  void operator()(double t, const State& y, State& dy) const {
    const double c = std::cos(omega * t);
    const double haa = half_omega0 - e_d_aa * c;
    const double hbb = -half_omega0 - e_d_bb * c;
    const double hab = -e_d_ab * c;
    // H C, then dC/dt = -i H C
    const double ra = haa * y[0] + hab * y[2];
    const double ia = haa * y[1] + hab * y[3];
    const double rb = hbb * y[2] + hab * y[0];
    const double ib = hbb * y[3] + hab * y[1];
    dy[0] = ia;
    dy[1] = -ra;
    dy[2] = ib;
    dy[3] = -rb;
  }
};

/// dc_a/dt = i E d_ab cos(wt) e^{i w0 t} S(t) c_b, dc_b/dt = i E d_ab cos(wt) e^{-i w0 t} conj(S(t)) c_a,
/// S(t) = sum_{|n|<=N} J_n(kappa) e^{i n w t}, the truncated expansion of e^{i kappa sin(wt)}.
struct TransformedRhs {
  double omega0, e_d_ab, omega;
  std::vector<double> bessel;  // J_0..J_N

  cplx harmonic_sum(double t) const {
    const double theta = omega * t;
    const double c1 = std::cos(theta), s1 = std::sin(theta);
    double re = bessel[0], im = 0.0;
    double cn = 1.0, sn = 0.0;
    for (std::size_t n = 1; n < bessel.size(); ++n) {
      const double cnext = cn * c1 - sn * s1;
      const double snext = sn * c1 + cn * s1;
      cn = cnext;
      sn = snext;
      if (n % 2 == 0) {
        re += 2.0 * bessel[n] * cn;
      } else {
        im += 2.0 * bessel[n] * sn;
      }
    }
    return {re, im};
  }

  void operator()(double t, const State& y, State& dy) const {
    const double g = e_d_ab * std::cos(omega * t);
    const cplx s = harmonic_sum(t);
    const cplx carrier{std::cos(omega0 * t), std::sin(omega0 * t)};
    const cplx ca{y[0], y[1]}, cb{y[2], y[3]};
    const cplx i_g{0.0, g};
    const cplx da = i_g * carrier * s * cb;
    const cplx db = i_g * std::conj(carrier * s) * ca;
    dy[0] = da.real();
    dy[1] = da.imag();
    dy[2] = db.real();
    dy[3] = db.imag();
  }
};

double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / scale;
    sum += r * r;
  }
  return std::sqrt(sum / 4.0);
}

struct StepStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Adaptive DOPRI5 from t0 to t1. For each accepted step the callback receives
/// (t_left, h, dense coefficients) so output can be interpolated.
template <class Rhs, class OnStep>
State dopri5(const Rhs& rhs, State y, double t0, double t1, double h_hint, const SolverOptions& opts,
             OnStep&& on_step, StepStats& stats) {
  const double direction = (t1 >= t0) ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  if (span == 0.0) return y;
  double h = std::min(std::abs(h_hint), span);
  double t = t0;
  State k1, k2, k3, k4, k5, k6, k7, tmp, y_new, err;
  rhs(t, y, k1);
  bool last_rejected = false;
  std::array<State, 5> dense;

  while (direction * (t1 - t) > 0.0) {
    if (stats.accepted + stats.rejected >= opts.max_steps) {
      throw NumericalError(fmt::format("step budget of {} exhausted at t = {}", opts.max_steps, t), t);
    }
    const double remaining = std::abs(t1 - t);
    bool final_step = false;
    if (h >= remaining) {
      h = remaining;
      final_step = true;
    }
    const double min_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
    if (h < min_step) {
      throw NumericalError(fmt::format("step size underflow (h = {:.3e}) at t = {:.17g}", h, t), t);
    }
    const double hs = direction * h;

    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + hs * a21 * k1[i];
    rhs(t + c2 * hs, tmp, k2);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * hs, tmp, k3);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * hs, tmp, k4);
    for (int i = 0; i < 4; ++i) tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * hs, tmp, k5);
    for (int i = 0; i < 4; ++i)
      tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    const double t_new = final_step ? t1 : t + hs;
    rhs(t + hs, tmp, k6);
    for (int i = 0; i < 4; ++i)
      y_new[i] = y[i] + hs * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    rhs(t + hs, y_new, k7);
    for (int i = 0; i < 4; ++i)
      err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

    const double en = error_norm(err, y, y_new, opts.atol, opts.rtol);
    if (!std::isfinite(en)) {
      throw NumericalError(fmt::format("nonfinite state encountered at t = {:.17g}", t), t);
    }

    if (en <= 1.0) {
      for (int i = 0; i < 4; ++i) {
        const double dy = y_new[i] - y[i];
        const double bspl = hs * k1[i] - dy;
        dense[0][i] = y[i];
        dense[1][i] = dy;
        dense[2][i] = bspl;
        dense[3][i] = dy - hs * k7[i] - bspl;
        dense[4][i] = hs * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      on_step(t, t_new, dense);
      ++stats.accepted;
      t = t_new;
      y = y_new;
      k1 = k7;
      double factor = (en == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      if (last_rejected) factor = std::min(factor, 1.0);
      h *= factor;
      last_rejected = false;
    } else {
      ++stats.rejected;
      h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
      last_rejected = true;
    }
  }
  return y;
}

State to_state(const Amplitudes& a) { return {a.c_a.real(), a.c_a.imag(), a.c_b.real(), a.c_b.imag()}; }

double initial_step(const SystemParams& sys, const DriveParams& drive) {
  return 1e-3 * 2.0 * std::numbers::pi / std::max(sys.omega0, drive.omega);
}

OriginalRhs make_original(const SystemParams& sys, const DriveParams& drive) {
  return {0.5 * sys.omega0, drive.e_amp * sys.d_aa, drive.e_amp * sys.d_bb, drive.e_amp * sys.d_ab, drive.omega};
}

TransformedRhs make_transformed(const SystemParams& sys, const DriveParams& drive, const SolverOptions& opts) {
  const double kappa = compute_kappa(sys, drive);
  const auto row = bessel_row(opts.truncation_for(kappa), kappa);
  return {sys.omega0, drive.e_amp * sys.d_ab, drive.omega, row.values};
}

template <class Rhs>
AmplitudeTrajectory run_sampled(const Rhs& rhs, Frame frame, const SystemParams& sys, const DriveParams& drive,
                                const InitialState& init, double t_end, const SamplingPlan& sampling,
                                const SolverOptions& opts) {
  sys.validate();
  drive.validate();
  init.validate();
  opts.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive and finite");
  if (!(sampling.dt > 0.0) || sampling.dt > t_end) throw std::invalid_argument("sampling dt must be in (0, t_end]");

  const auto n_samples = static_cast<std::size_t>(std::floor(t_end / sampling.dt * (1.0 + 1e-12))) + 1;
  AmplitudeTrajectory traj;
  traj.frame = frame;
  traj.norm_budget = opts.norm_budget;
  traj.times.resize(n_samples);
  traj.c_a.resize(n_samples);
  traj.c_b.resize(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) traj.times[i] = static_cast<double>(i) * sampling.dt;
  traj.c_a[0] = init.c_a0;
  traj.c_b[0] = init.c_b0;
  if (frame == Frame::transformed) traj.restoration = FrameRestoration::from(sys, drive);

  std::size_t next = 1;
  auto emit = [&](double t_left, double t_right, const std::array<State, 5>& dense) {
    const double h = t_right - t_left;
    while (next < n_samples && traj.times[next] <= t_right) {
      const double theta = (traj.times[next] - t_left) / h;
      const double theta1 = 1.0 - theta;
      State v;
      for (int i = 0; i < 4; ++i) {
        v[i] = dense[0][i] +
               theta * (dense[1][i] + theta1 * (dense[2][i] + theta * (dense[3][i] + theta1 * dense[4][i])));
      }
      traj.c_a[next] = {v[0], v[1]};
      traj.c_b[next] = {v[2], v[3]};
      ++next;
    }
  };

  StepStats stats;
  const State y0 = to_state({init.c_a0, init.c_b0});
  const State y_end = dopri5(rhs, y0, 0.0, traj.times.back(), initial_step(sys, drive), opts, emit, stats);
  if (next < n_samples) {  // guard against rounding at the final sample
    traj.c_a[next] = {y_end[0], y_end[1]};
    traj.c_b[next] = {y_end[2], y_end[3]};
  }
  traj.steps_accepted = stats.accepted;
  traj.steps_rejected = stats.rejected;

  double drift = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    drift = std::max(drift, std::abs(std::norm(traj.c_a[i]) + std::norm(traj.c_b[i]) - 1.0));
  }
  traj.norm_drift = drift;
  return traj;
}

}  // namespace

void InitialState::validate() const {
  const double n = std::norm(c_a0) + std::norm(c_b0);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
    throw std::invalid_argument(fmt::format("initial state is not normalized (|c_a|^2+|c_b|^2 = {:.17g})", n));
  }
}

const char* to_string(Frame f) { return f == Frame::original ? "original" : "transformed"; }

FrameRestoration FrameRestoration::from(const SystemParams& sys, const DriveParams& drive) {
  return {sys.omega0, drive.omega, drive.e_amp * sys.d_aa / drive.omega, drive.e_amp * sys.d_bb / drive.omega};
}

SamplingPlan SamplingPlan::for_run(const SystemParams& sys, const DriveParams& drive, int m) {
  sys.validate();
  drive.validate();
  const double drive_period = 2.0 * std::numbers::pi / drive.omega;
  int per_period = 32;
  const double omega_r = std::abs(rabi_frequency(sys, drive, m));
  if (omega_r > 0.0) {
    const double rabi_period = 2.0 * std::numbers::pi / omega_r;
    per_period = std::max(per_period, static_cast<int>(std::ceil(256.0 * drive_period / rabi_period)));
  }
  // the carrier frequency omega0 may exceed the drive frequency on subharmonic resonances
  per_period = std::max(per_period, static_cast<int>(std::ceil(32.0 * sys.omega0 / drive.omega)));
  return {drive_period / per_period};
}

int SamplingPlan::samples_per_drive_period(const DriveParams& drive) const {
  return static_cast<int>(std::lround(2.0 * std::numbers::pi / drive.omega / dt));
}

void SolverOptions::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) throw std::invalid_argument("solver tolerances must be positive");
  if (!(norm_budget > 0.0)) throw std::invalid_argument("norm budget must be positive");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
}

int SolverOptions::truncation_for(double kappa) const {
  return n_trunc >= 0 ? n_trunc : static_cast<int>(std::ceil(std::abs(kappa))) + 8;
}

AmplitudeTrajectory integrate_exact(const SystemParams& sys, const DriveParams& drive, const InitialState& init,
                                    double t_end, const SamplingPlan& sampling, const SolverOptions& opts) {
  return run_sampled(make_original(sys, drive), Frame::original, sys, drive, init, t_end, sampling, opts);
}

AmplitudeTrajectory integrate_transformed(const SystemParams& sys, const DriveParams& drive, const InitialState& init,
                                          double t_end, const SamplingPlan& sampling, const SolverOptions& opts) {
  return run_sampled(make_transformed(sys, drive, opts), Frame::transformed, sys, drive, init, t_end, sampling,
                     opts);
}

Amplitudes propagate(const SystemParams& sys, const DriveParams& drive, Frame frame, Amplitudes state, double t0,
                     double t1, const SolverOptions& opts) {
  sys.validate();
  drive.validate();
  opts.validate();
  StepStats stats;
  auto ignore = [](double, double, const std::array<State, 5>&) {};
  State y;
  if (frame == Frame::original) {
    y = dopri5(make_original(sys, drive), to_state(state), t0, t1, initial_step(sys, drive), opts, ignore, stats);
  } else {
    y = dopri5(make_transformed(sys, drive, opts), to_state(state), t0, t1, initial_step(sys, drive), opts, ignore,
               stats);
  }
  return {{y[0], y[1]}, {y[2], y[3]}};
}

Populations population(const AmplitudeTrajectory& traj) {
  Populations p;
  p.times = traj.times;
  p.p_a.resize(traj.size());
  p.p_b.resize(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    p.p_a[i] = std::norm(traj.c_a[i]);
    p.p_b[i] = std::norm(traj.c_b[i]);
  }
  return p;
}

AmplitudeTrajectory to_original_frame(const AmplitudeTrajectory& traj) {
  if (traj.frame == Frame::original) return traj;
  if (!traj.restoration) throw std::invalid_argument("transformed trajectory carries no frame-restoration metadata");
  AmplitudeTrajectory out = traj;
  out.frame = Frame::original;
  out.restoration.reset();
  kernels::parallel::restore_original_frame(traj.times, traj.c_a, traj.c_b, *traj.restoration, out.c_a, out.c_b);
  return out;
}

}  // namespace asymtls
