#pragma once

#include <optional>
#include <vector>

namespace asymtls {

/// Two-level system in internal units (hbar = 1). Dipoles are scalar
/// projections on the field polarization axis.
struct SystemParams {
  double omega0 = 1.0;  ///< transition frequency
  double d_aa = 0.0;    ///< excited-state diagonal dipole
  double d_bb = 0.0;    ///< ground-state diagonal dipole
  double d_ab = 0.0;    ///< off-diagonal dipole (real)
  std::optional<double> tau;  ///< lifetime, only used by the strong-coupling check

  /// Throws std::invalid_argument unless omega0 > 0, d_ab != 0, tau > 0.
  void validate() const;
};

/// Monochromatic classical drive E cos(omega t).
struct DriveParams {
  double e_amp = 0.0;
  double omega = 1.0;

  void validate() const;
};

struct DerivedParams {
  double kappa = 0.0;      ///< E (d_bb - d_aa) / omega
  int m = 1;               ///< resonance index
  double delta = 0.0;      ///< omega0 - m omega
  double omega_r = 0.0;    ///< Rabi frequency at the m-th resonance
  double omega_gen = 0.0;  ///< sqrt(omega_r^2 + delta^2)
};

/// Below this |kappa| the Rabi frequency uses the small-argument limit.
inline constexpr double kKappaSeriesThreshold = 1e-8;

double compute_kappa(const SystemParams& sys, const DriveParams& drive);

/// n J_n(kappa) / kappa with the removable singularity at kappa = 0 resolved.
double bessel_ratio(int n, double kappa);

/// 2 E d_ab m J_m(kappa) / kappa. Throws std::invalid_argument for m < 1.
double rabi_frequency(const SystemParams& sys, const DriveParams& drive, int m);

DerivedParams derived(const SystemParams& sys, const DriveParams& drive, int m);

/// |E d_ab n J_n(kappa) / (kappa (omega0 - n omega))|; +infinity exactly on
/// the n-th resonance.
double resonance_dominance(const SystemParams& sys, const DriveParams& drive, int n);

struct DominanceEntry {
  int n = 0;
  double ratio = 0.0;
  bool ok = false;
};

/// Isolation of the m-th resonance: the target ratio should reach
/// kTargetDominance, every other n <= m + 5 should stay below
/// kNeighbourDominance. Advisory only.
struct IsolationReport {
  int m = 1;
  std::vector<DominanceEntry> entries;
  bool isolated = false;
};

inline constexpr double kTargetDominance = 1.0;
inline constexpr double kNeighbourDominance = 0.1;

IsolationReport resonance_isolation(const SystemParams& sys, const DriveParams& drive, int m);

/// Builds a system with the requested kappa and Rabi frequency at the m-th
/// resonance for a drive of amplitude e_amp at omega = omega0 / m - detuning / m.
/// The diagonal dipoles are split symmetrically around zero.
struct ResonantDesign {
  SystemParams sys;
  DriveParams drive;
};
ResonantDesign design_resonant_system(double omega0, int m, double kappa, double omega_r,
                                      double detuning = 0.0, double e_amp = 1.0);

}  // namespace asymtls
