#pragma once

// Gaussian-unit constants (CODATA 2018) and conversions used by the physical
// presets. The dynamics never sees these; they live at the reporting edge.

namespace asymtls::units {

inline constexpr double kSpeedOfLight = 2.99792458e10;       // cm/s (exact)
inline constexpr double kElementaryCharge = 4.803204712570263e-10;  // statC
inline constexpr double kHbar = 1.054571817e-27;             // erg s
inline constexpr double kBohrRadius = 5.29177210903e-9;      // cm
inline constexpr double kDebye = 1e-18;                      // statC cm per Debye
inline constexpr double kVoltPerStatvolt = 299.792458;       // V per statV
inline constexpr double kErgPerEv = 1.602176634e-12;         // erg per eV
inline constexpr double kErgPerSecondPerWatt = 1e7;

/// Conversion helpers, named by direction.
struct UnitContext {
  double c = kSpeedOfLight;
  double e = kElementaryCharge;
  double hbar = kHbar;
  double a_bohr = kBohrRadius;

  static constexpr double debye_to_statc_cm(double d) { return d * kDebye; }
  static constexpr double statc_cm_to_debye(double d) { return d / kDebye; }
  static constexpr double v_per_cm_to_statv_per_cm(double f) { return f / kVoltPerStatvolt; }
  static constexpr double statv_per_cm_to_v_per_cm(double f) { return f * kVoltPerStatvolt; }
  static constexpr double ev_to_erg(double e) { return e * kErgPerEv; }
  static constexpr double erg_to_ev(double e) { return e / kErgPerEv; }
  static constexpr double erg_per_s_to_watt(double p) { return p / kErgPerSecondPerWatt; }
  static constexpr double watt_to_erg_per_s(double p) { return p * kErgPerSecondPerWatt; }

  /// Intra-atomic field e / a_B^2 in statV/cm.
  [[nodiscard]] double atomic_field() const { return e / (a_bohr * a_bohr); }
};

}  // namespace asymtls::units
