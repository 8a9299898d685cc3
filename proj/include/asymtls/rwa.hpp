#pragma once

#include <string>
#include <vector>

#include "asymtls/dynamics.hpp"
#include "asymtls/kernels.hpp"
#include "asymtls/model.hpp"

namespace asymtls {

/// Rotating-wave solution near the m-th resonance.
struct RwaSolution {
  SystemParams sys;
  DriveParams drive;
  DerivedParams derived;
  InitialState init;

  static RwaSolution make(const SystemParams& sys, const DriveParams& drive, int m,
                          const InitialState& init = InitialState::excited());
  [[nodiscard]] int m() const { return derived.m; }
};

/// Original-frame amplitudes (C_a, C_b) at time t, including the diagonal
/// phases phi_j = E d_jj sin(omega t) / omega.
Amplitudes rwa_amplitudes(const RwaSolution& sol, double t);

/// Lines of the dipole expression for the excited initial state with
/// harmonics |n| <= n_range; time-independent terms omitted. Frequencies may
/// be negative, each line stands for coef e^{i omega t} + c.c.
/// Throws std::invalid_argument unless the initial state is excited and
/// n_range >= m + 3.
std::vector<SpectralLine> dipole_rwa_lines(const RwaSolution& sol, int n_range);

/// Real dipole d(t) from the line list above.
double dipole_rwa(const RwaSolution& sol, double t, int n_range);

/// d(t) on a grid (OpenMP kernel).
std::vector<double> dipole_rwa_series(const RwaSolution& sol, std::span<const double> times, int n_range);

/// Lines with equal |frequency| merged into real cosine amplitudes, sorted by
/// frequency: amplitude_k = |sum of 2 coef over +-omega_k|.
struct LineAmplitude {
  double omega = 0.0;
  double amplitude = 0.0;
};
std::vector<LineAmplitude> merge_lines(std::span<const SpectralLine> lines, double tolerance = 1e-12);

enum class CheckStatus { pass, warn, not_evaluated };
const char* to_string(CheckStatus s);

struct ValidityCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  CheckStatus status = CheckStatus::not_evaluated;
  std::string note;
};

struct ValidityReport {
  int m = 1;
  DerivedParams derived;
  std::vector<ValidityCheck> checks;
  IsolationReport isolation;

  [[nodiscard]] bool all_pass() const;
};

/// Omega_R tau >> 1 (threshold 10), Omega_R / omega << 1 (threshold 0.1), and
/// the resonance-isolation ratios. Warnings only.
ValidityReport rwa_validity(const SystemParams& sys, const DriveParams& drive, int m);

inline constexpr double kStrongCouplingThreshold = 10.0;
inline constexpr double kRwaHierarchyThreshold = 0.1;

}  // namespace asymtls
