#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asymtls/model.hpp"
#include "asymtls/units.hpp"

namespace asymtls {

/// 4 (2/3)^5 = 128/243
inline constexpr double kHydrogenRabiCoefficient = 128.0 / 243.0;
/// (1/8)(4/3)^11 = 4^11 / (8 * 3^11)
inline constexpr double kHydrogenDipoleCoefficient = 4194304.0 / (8.0 * 177147.0);

/// Fields at or above this fraction of e / a_B^2 trigger the weak-field warning.
inline constexpr double kWeakFieldFraction = 1e-2;

struct Geometry {
  std::optional<double> qd_height_cm;
  double qd_area_cm2 = 0.0;
  double density_per_cm2 = 0.0;
  double array_size = 1.0;
};

/// A physical preset in Gaussian units: omega0 in rad/s, dipoles in statC cm.
struct ScenarioPreset {
  std::string name;
  std::string description;
  SystemParams sys;
  double drive_min_v_per_cm = 0.0;
  double drive_max_v_per_cm = 0.0;
  std::optional<double> static_field_v_per_cm;
  std::optional<Geometry> geometry;
  double d_cv_statc_cm = 0.0;  ///< interband dipole used for Omega_R = E d_cv / hbar
};

struct FieldCheck {
  double ratio = 0.0;  ///< field / (e / a_B^2)
  bool weak = true;
};

FieldCheck weak_field_check(double field_v_per_cm);

/// Omega_R = 4 (2/3)^5 e a_B E / hbar in rad/s for E in V/cm.
double hydrogen_rabi(double e_v_per_cm, std::vector<std::string>* warnings = nullptr);

/// |d_aa - d_bb| = (1/8)(4/3)^11 a_B^3 eps in statC cm for eps in V/cm.
double hydrogen_effective_dipole(double eps_v_per_cm, std::vector<std::string>* warnings = nullptr);

/// III-nitride quantum dot: d_cv = |d_aa - d_bb| = 10 Debye, area 1e-12 cm^2,
/// density 1e11 cm^-2, built-in field 2 MV/cm, GaN gap 3.4 eV.
ScenarioPreset qd_preset();
/// Same dot in an array of 1e7 emitters.
ScenarioPreset qd_array_preset();
/// Hydrogen atom in a static field (default 2 MV/cm).
ScenarioPreset hydrogen_preset();
/// Superconducting qubit, 10 GHz transition, 100 MHz Rabi frequency.
ScenarioPreset qubit_preset();

/// E = hbar Omega_R / d_cv in V/cm.
double qd_drive_for_rabi(double omega_r, const ScenarioPreset& preset = qd_preset());
/// Omega_R = E d_cv / hbar in rad/s.
double qd_rabi_for_drive(double e_v_per_cm, const ScenarioPreset& preset = qd_preset());

struct ArrayPower {
  double per_dot_power_w = 0.0;
  double per_dot_intensity_w_per_cm2 = 0.0;
  double total_power_w = 0.0;
  double lambda_r_cm = 0.0;
  double capacity = 0.0;  ///< density * lambda_R^2
  bool fits = true;
};

/// Coherent N^2 scaling of the per-dot singlet power; the array must fit
/// inside a lambda_R x lambda_R patch. Throws std::invalid_argument for N < 1.
ArrayPower array_power(const ScenarioPreset& preset, double n, double omega_r);

/// Rabi wavelength 2 pi c / Omega_R in cm.
double rabi_wavelength_cm(double omega_r);

/// Dimensionless version of the qubit preset for the dynamics: omega0 = 1,
/// Omega_R = 0.01 (the 10 GHz / 100 MHz hierarchy), kappa = 0.5 at m = 1.
struct QubitSimulation {
  SystemParams sys;
  DriveParams drive;
  int m = 1;
  double frequency_unit_hz = 10e9;  ///< omega0 / 2 pi
};
QubitSimulation qubit_simulation(double kappa = 0.5);

/// Names accepted by the estimate command.
std::vector<std::string> estimate_preset_names();
/// Throws std::out_of_range for unknown names.
ScenarioPreset estimate_preset(const std::string& name);

}  // namespace asymtls
