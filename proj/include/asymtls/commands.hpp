#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymtls/analysis.hpp"
#include "asymtls/config.hpp"
#include "asymtls/dynamics.hpp"
#include "asymtls/kernels.hpp"
#include "asymtls/rwa.hpp"
#include "asymtls/scenarios.hpp"
#include "asymtls/spectrum.hpp"

namespace asymtls {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct CommandContext {
  std::filesystem::path out_dir;  ///< created if missing; empty disables file output
  std::ostream* log = nullptr;    ///< human-readable report, may be null
};

struct SimulateResult {
  AmplitudeTrajectory trajectory;  ///< original frame
  Populations populations;
  DerivedParams derived;
  OscillationEstimate oscillation;
  ValidityReport validity;
  nlohmann::json summary;
};

/// Integrates the configured run. Writes trajectory.dat, populations.dat,
/// summary.json and config.json.
SimulateResult cmd_simulate(const RunConfig& cfg, const CommandContext& ctx);

struct SpectrumResult {
  SpectrumReport report;
  DerivedParams derived;
  nlohmann::json summary;
};

/// Dipole spectrum over spectrum.rabi_periods Rabi periods with classified
/// peaks. Writes spectrum.dat, peaks.dat, summary.json and config.json.
/// Throws ConfigError when the generalized Rabi frequency vanishes.
SpectrumResult cmd_spectrum(const RunConfig& cfg, const CommandContext& ctx);

struct RabiMinimum {
  int m = 1;
  double e_amp = 0.0;
  double kappa = 0.0;
  double omega_r = 0.0;
  bool sign_change = true;  ///< false for a grid-level touch without a sign change
};

struct RabiMapResult {
  std::vector<RabiMapRow> rows;
  std::vector<RabiMinimum> minima;
};

/// Default drive sweep when the config has none: kappa from 0 to 12.
SweepAxis default_rabi_sweep(const RunConfig& cfg);

/// Omega_R(E) for m = 1..m_max over the drive sweep. Interior zeros are
/// refined by bisection. Writes rabi_map.dat, minima.dat and config.json.
RabiMapResult cmd_rabi_map(const RunConfig& cfg, const CommandContext& ctx);

struct EstimateReport {
  std::string preset;
  double omega_r = 0.0;             ///< rad/s
  double drive_field_v_per_cm = 0.0;
  double effective_dipole_debye = 0.0;
  std::optional<double> static_field_v_per_cm;
  double intensity_erg_per_s = 0.0;
  double intensity_w = 0.0;
  std::optional<double> intensity_w_per_cm2;
  double lambda_r_cm = 0.0;
  std::optional<double> hierarchy;  ///< omega0 / Omega_R
  std::optional<double> dipole_ratio_vs_hydrogen;
  std::optional<ArrayPower> array;
  std::optional<double> array_size;
  std::vector<std::string> warnings;

  [[nodiscard]] nlohmann::json to_json() const;
  [[nodiscard]] std::string text() const;
};

/// Order-of-magnitude estimates for a physical preset. Writes estimate.json,
/// report.txt and config.json. Throws ConfigError for unknown presets.
EstimateReport cmd_estimate(const RunConfig& cfg, const CommandContext& ctx);

/// Command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace asymtls
