#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "asymtls/model.hpp"

namespace asymtls {

using cplx = std::complex<double>;

struct InitialState {
  cplx c_a0{1.0, 0.0};
  cplx c_b0{0.0, 0.0};

  static InitialState excited() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static InitialState ground() { return {{0.0, 0.0}, {1.0, 0.0}}; }

  /// Throws std::invalid_argument unless |c_a0|^2 + |c_b0|^2 = 1 within 1e-12.
  void validate() const;
};

enum class Frame { original, transformed };

const char* to_string(Frame f);

/// Phase data needed to map transformed amplitudes back to the original
/// frame: C_a = c_a exp(-i omega0 t / 2 + i phi_a), C_b = c_b exp(+i omega0 t / 2 + i phi_b),
/// phi_j = phase_amp_j sin(omega t).
struct FrameRestoration {
  double omega0 = 0.0;
  double omega = 0.0;
  double phase_amp_a = 0.0;  ///< E d_aa / omega
  double phase_amp_b = 0.0;  ///< E d_bb / omega

  static FrameRestoration from(const SystemParams& sys, const DriveParams& drive);
};

struct AmplitudeTrajectory {
  std::vector<double> times;
  std::vector<cplx> c_a;
  std::vector<cplx> c_b;
  Frame frame = Frame::original;
  double norm_drift = 0.0;  ///< max_t | |c_a|^2 + |c_b|^2 - 1 |
  double norm_budget = 0.0;
  std::optional<FrameRestoration> restoration;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;

  [[nodiscard]] std::size_t size() const { return times.size(); }
  [[nodiscard]] bool within_budget() const { return norm_drift <= norm_budget; }
};

/// Uniform output grid t_i = i * dt.
struct SamplingPlan {
  double dt = 0.0;

  /// Whole number of samples per drive period, at least 32 per drive period
  /// and 256 per Rabi period at the m-th resonance.
  static SamplingPlan for_run(const SystemParams& sys, const DriveParams& drive, int m);
  [[nodiscard]] int samples_per_drive_period(const DriveParams& drive) const;
};

struct SolverOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  int n_trunc = -1;  ///< Bessel truncation of the effective field, < 0 selects ceil(|kappa|) + 8
  double norm_budget = 1e-8;
  std::size_t max_steps = 200'000'000;

  void validate() const;
  [[nodiscard]] int truncation_for(double kappa) const;
};

struct Amplitudes {
  cplx c_a;
  cplx c_b;
};

/// Exact amplitude equations in the original frame.
AmplitudeTrajectory integrate_exact(const SystemParams& sys, const DriveParams& drive, const InitialState& init,
                                    double t_end, const SamplingPlan& sampling, const SolverOptions& opts = {});

/// Gauge-transformed equations with the effective field expanded in Bessel
/// harmonics |n| <= n_trunc.
AmplitudeTrajectory integrate_transformed(const SystemParams& sys, const DriveParams& drive, const InitialState& init,
                                          double t_end, const SamplingPlan& sampling, const SolverOptions& opts = {});

/// Propagates a state from t0 to t1 (either direction) in the given frame.
Amplitudes propagate(const SystemParams& sys, const DriveParams& drive, Frame frame, Amplitudes state, double t0,
                     double t1, const SolverOptions& opts = {});

struct Populations {
  std::vector<double> times;
  std::vector<double> p_a;
  std::vector<double> p_b;
};

Populations population(const AmplitudeTrajectory& traj);

/// Copy of a transformed trajectory expressed in the original frame. Throws
/// std::invalid_argument if the restoration metadata is missing.
AmplitudeTrajectory to_original_frame(const AmplitudeTrajectory& traj);

}  // namespace asymtls
