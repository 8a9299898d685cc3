#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "asymtls/dynamics.hpp"
#include "asymtls/model.hpp"
#include "oracles.hpp"

namespace asymtls::testing {

/// System at the m-th resonance with the requested kappa and Rabi frequency,
/// the coupling set from the series oracle rather than the library.
struct Setup {
  SystemParams sys;
  DriveParams drive;
};

inline Setup resonant(int m, double kappa, double omega_r, double omega0 = 1.0) {
  Setup s;
  s.drive.e_amp = 1.0;
  s.drive.omega = omega0 / m;
  s.sys.omega0 = omega0;
  const double split = kappa * s.drive.omega / s.drive.e_amp;
  s.sys.d_aa = -split / 2;
  s.sys.d_bb = split / 2;
  const double ratio = kappa == 0.0 ? (m == 1 ? 0.5 : 0.0) : m * oracle::bessel_series(m, kappa) / kappa;
  s.sys.d_ab = omega_r / (2.0 * s.drive.e_amp * ratio);
  return s;
}

/// 2 E d_ab m J_m(kappa) / kappa from the series oracle.
inline double oracle_rabi(const Setup& s, int m) {
  const double kappa = s.drive.e_amp * (s.sys.d_bb - s.sys.d_aa) / s.drive.omega;
  if (kappa == 0.0) return m == 1 ? s.drive.e_amp * s.sys.d_ab : 0.0;
  return 2.0 * s.drive.e_amp * s.sys.d_ab * m * oracle::bessel_series(m, kappa) / kappa;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace asymtls::testing
