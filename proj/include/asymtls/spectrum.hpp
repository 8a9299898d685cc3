#pragma once

#include <span>
#include <string>
#include <vector>

#include "asymtls/dynamics.hpp"
#include "asymtls/kernels.hpp"
#include "asymtls/model.hpp"
#include "asymtls/rwa.hpp"
#include "asymtls/units.hpp"

namespace asymtls {

enum class DipoleSource { exact, rwa };
const char* to_string(DipoleSource s);

/// Real dipole samples on a uniform grid with the mean removed.
struct DipoleSeries {
  std::vector<double> times;
  std::vector<double> values;
  DipoleSource source = DipoleSource::exact;
  double dc_offset = 0.0;
  double dt = 0.0;
};

/// d(t) = d_aa |C_a|^2 + d_bb |C_b|^2 + 2 d_ab Re(C_a^* C_b) in the original
/// frame. Transformed trajectories are mapped back first; throws
/// std::invalid_argument if they carry no restoration data.
DipoleSeries dipole_from_trajectory(const AmplitudeTrajectory& traj, const SystemParams& sys);

/// Closed-form dipole sampled on a grid.
DipoleSeries dipole_from_rwa(const RwaSolution& sol, std::span<const double> times, int n_range);

enum class PeakKind { singlet, triplet, unidentified };
enum class TripletMember { lower, center, upper };
const char* to_string(PeakKind k);
const char* to_string(TripletMember m);

struct Peak {
  double omega = 0.0;      ///< refined angular frequency
  double amplitude = 0.0;  ///< cosine amplitude, window-corrected
  double power = 0.0;      ///< periodogram value at the peak bin
  std::size_t bin = 0;
  PeakKind kind = PeakKind::unidentified;
  int n = 0;  ///< triplet index
  TripletMember member = TripletMember::center;
  double predicted_omega = 0.0;

  [[nodiscard]] std::string label() const;
};

struct SpectrumReport {
  std::vector<double> freqs;  ///< angular frequency of each bin
  std::vector<double> power;  ///< one-sided, window-gain corrected: sum(power) ~ mean square
  std::vector<Peak> peaks;
  double resolution = 0.0;  ///< bin width (angular)
  double noise_floor = 0.0;
  double mean_square = 0.0;  ///< of the DC-free input series
  double dc_offset = 0.0;
  WindowKind window = WindowKind::hann;

  [[nodiscard]] double total_power() const;
  [[nodiscard]] const Peak* find(PeakKind kind, int n = 0, TripletMember member = TripletMember::center) const;
};

struct PeriodogramOptions {
  WindowKind window = WindowKind::hann;
  double floor_ratio = 1e-6;           ///< peaks must exceed floor_ratio * max power
  int neighbourhood = 3;               ///< a peak dominates +-neighbourhood bins
  double required_resolution = 0.0;    ///< if > 0, bin width must not exceed it
};

/// Windowed FFT periodogram with peak picking. Throws std::invalid_argument
/// for fewer than 16 samples or when the record cannot reach the requested
/// resolution.
SpectrumReport periodogram(const DipoleSeries& series, const PeriodogramOptions& opts = {});

/// Assigns each peak to the nearest predicted line (singlet at Omega, triplet
/// n omega and n omega +- Omega for 1 <= n <= n_max) within Omega / 2.
/// Lines claimed twice go to the larger peak; the rest stay unidentified.
SpectrumReport classify_peaks(SpectrumReport report, const DerivedParams& derived, double drive_omega, int n_max);

/// Time-averaged power |d_aa - d_bb|^2 Omega_R^4 / (12 c^3) of the singlet, in
/// Gaussian units (erg/s) when dipoles are in statC cm and omega_r in rad/s.
double radiated_intensity(const SystemParams& sys, double omega_r, double c = units::kSpeedOfLight);

}  // namespace asymtls
