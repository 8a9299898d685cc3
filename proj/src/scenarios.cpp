#include "asymtls/scenarios.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/core.h>

#include "asymtls/spectrum.hpp"

namespace asymtls {

namespace {

using units::UnitContext;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_field(double v_per_cm, const char* what, std::vector<std::string>* warnings) {
  if (!std::isfinite(v_per_cm) || v_per_cm < 0.0) throw std::invalid_argument(fmt::format("{} must be >= 0", what));
  const auto fc = weak_field_check(v_per_cm);
  if (!fc.weak && warnings) {
    warnings->push_back(fmt::format("{} is {:.3g} of the intra-atomic field e/a_B^2; the weak-field formula is unreliable",
                                    what, fc.ratio));
  }
}

}  // namespace

FieldCheck weak_field_check(double field_v_per_cm) {
  const UnitContext u;
  FieldCheck fc;
  fc.ratio = UnitContext::v_per_cm_to_statv_per_cm(field_v_per_cm) / u.atomic_field();
  fc.weak = fc.ratio < kWeakFieldFraction;
  return fc;
}

double hydrogen_rabi(double e_v_per_cm, std::vector<std::string>* warnings) {
  check_field(e_v_per_cm, "driving field", warnings);
  const UnitContext u;
  return kHydrogenRabiCoefficient * u.e * u.a_bohr * UnitContext::v_per_cm_to_statv_per_cm(e_v_per_cm) / u.hbar;
}

double hydrogen_effective_dipole(double eps_v_per_cm, std::vector<std::string>* warnings) {
  check_field(eps_v_per_cm, "static field", warnings);
  const UnitContext u;
  return kHydrogenDipoleCoefficient * u.a_bohr * u.a_bohr * u.a_bohr *
         UnitContext::v_per_cm_to_statv_per_cm(eps_v_per_cm);
}

ScenarioPreset qd_preset() {
  ScenarioPreset p;
  p.name = "qd";
  p.description = "III-nitride quantum dot: 10 Debye interband and effective dipoles, THz Rabi drive";
  p.sys.omega0 = UnitContext::ev_to_erg(3.4) / units::kHbar;
  p.sys.d_aa = UnitContext::debye_to_statc_cm(10.0);
  p.sys.d_bb = 0.0;
  p.sys.d_ab = UnitContext::debye_to_statc_cm(10.0);
  p.d_cv_statc_cm = p.sys.d_ab;
  p.drive_min_v_per_cm = 1e4;
  p.drive_max_v_per_cm = 1e6;
  p.static_field_v_per_cm = 2e6;
  Geometry g;
  g.qd_area_cm2 = 1e-12;
  g.density_per_cm2 = 1e11;
  g.array_size = 1.0;
  p.geometry = g;
  return p;
}

ScenarioPreset qd_array_preset() {
  ScenarioPreset p = qd_preset();
  p.name = "qd-array";
  p.description = "Phased array of identical III-nitride quantum dots";
  p.geometry->array_size = 1e7;
  return p;
}

ScenarioPreset hydrogen_preset() {
  ScenarioPreset p;
  p.name = "hydrogen";
  p.description = "Hydrogen atom in a homogeneous static field";
  const UnitContext u;
  p.sys.omega0 = UnitContext::ev_to_erg(10.2) / u.hbar;  // Lyman-alpha, for reference only
  p.sys.d_ab = kHydrogenRabiCoefficient * u.e * u.a_bohr;
  p.d_cv_statc_cm = p.sys.d_ab;
  p.static_field_v_per_cm = 2e6;
  p.sys.d_aa = hydrogen_effective_dipole(*p.static_field_v_per_cm);
  p.sys.d_bb = 0.0;
  p.drive_min_v_per_cm = 1e3;
  p.drive_max_v_per_cm = 1e6;
  return p;
}

ScenarioPreset qubit_preset() {
  ScenarioPreset p;
  p.name = "qubit";
  p.description = "Superconducting qubit away from charge degeneracy: 10 GHz transition, 100 MHz Rabi";
  p.sys.omega0 = kTwoPi * 10e9;
  // dipoles in the qubit's own units: E d_ab = hbar Omega_R at unit drive
  p.sys.d_ab = kTwoPi * 100e6;
  p.sys.d_aa = 0.0;
  p.sys.d_bb = 0.0;
  p.drive_min_v_per_cm = 1.0;
  p.drive_max_v_per_cm = 1.0;
  return p;
}

double qd_drive_for_rabi(double omega_r, const ScenarioPreset& preset) {
  if (!(omega_r >= 0.0) || !std::isfinite(omega_r)) throw std::invalid_argument("target Rabi frequency must be >= 0");
  return UnitContext::statv_per_cm_to_v_per_cm(units::kHbar * omega_r / preset.d_cv_statc_cm);
}

double qd_rabi_for_drive(double e_v_per_cm, const ScenarioPreset& preset) {
  return UnitContext::v_per_cm_to_statv_per_cm(e_v_per_cm) * preset.d_cv_statc_cm / units::kHbar;
}

double rabi_wavelength_cm(double omega_r) {
  if (!(omega_r > 0.0)) return std::numeric_limits<double>::infinity();
  return kTwoPi * units::kSpeedOfLight / omega_r;
}

ArrayPower array_power(const ScenarioPreset& preset, double n, double omega_r) {
  if (!(n >= 1.0)) throw std::invalid_argument("array size must be >= 1");
  if (!preset.geometry) throw std::invalid_argument("preset has no array geometry");
  const auto& g = *preset.geometry;
  ArrayPower a;
  const double per_dot_erg = radiated_intensity(preset.sys, omega_r);
  a.per_dot_power_w = UnitContext::erg_per_s_to_watt(per_dot_erg);
  a.per_dot_intensity_w_per_cm2 = a.per_dot_power_w / g.qd_area_cm2;
  a.total_power_w = n * n * a.per_dot_power_w;
  a.lambda_r_cm = rabi_wavelength_cm(omega_r);
  a.capacity = g.density_per_cm2 * a.lambda_r_cm * a.lambda_r_cm;
  a.fits = n <= a.capacity;
  return a;
}

QubitSimulation qubit_simulation(double kappa) {
  const auto d = design_resonant_system(1.0, 1, kappa, 0.01);
  QubitSimulation q;
  q.sys = d.sys;
  q.drive = d.drive;
  q.m = 1;
  return q;
}

std::vector<std::string> estimate_preset_names() { return {"qd", "qd-array", "hydrogen", "qubit"}; }

ScenarioPreset estimate_preset(const std::string& name) {
  if (name == "qd") return qd_preset();
  if (name == "qd-array") return qd_array_preset();
  if (name == "hydrogen") return hydrogen_preset();
  if (name == "qubit") return qubit_preset();
  throw std::out_of_range("unknown estimate preset '" + name + "'");
}

}  // namespace asymtls
