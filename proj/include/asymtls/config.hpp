#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymtls/dynamics.hpp"
#include "asymtls/kernels.hpp"
#include "asymtls/model.hpp"
#include "asymtls/spectrum.hpp"

namespace asymtls {

/// Malformed or inconsistent configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string parameter;  ///< dotted path of a numeric parameter, e.g. "drive.e_amp"
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  [[nodiscard]] std::vector<double> values() const;
};

struct IntegrationSettings {
  std::optional<double> t_end;
  double rabi_periods = 8.0;   ///< horizon when t_end is unset and Omega > 0
  double drive_periods = 100;  ///< horizon when t_end is unset and Omega = 0
  Frame frame = Frame::original;
  SolverOptions solver;
};

struct SpectrumSettings {
  WindowKind window = WindowKind::hann;
  double rabi_periods = 64.0;
  int n_max = 4;
  DipoleSource source = DipoleSource::exact;
  std::optional<int> n_range;  ///< Bessel range for the analytic source, default m + 8
  double floor_ratio = 1e-6;
};

struct EstimateSettings {
  std::optional<double> array_size;
  std::optional<double> drive_field_v_per_cm;
  std::optional<double> static_field_v_per_cm;
  std::optional<double> rabi_frequency_hz;
};

struct RunConfig {
  std::optional<std::string> preset;
  bool estimate_only = false;  ///< physical preset without dynamics parameters
  SystemParams sys;
  DriveParams drive;
  int m = 1;
  InitialState init = InitialState::excited();
  IntegrationSettings integration;
  SpectrumSettings spectrum;
  std::optional<SweepAxis> sweep;
  int m_max = 3;
  EstimateSettings estimate;

  /// Horizon of a simulate run.
  [[nodiscard]] double horizon() const;
};

/// Simulation presets (dimensionless): symmetric, asymmetric, subharmonic,
/// bessel-zero, qubit. Estimate presets: qd, qd-array, hydrogen, qubit.
std::vector<std::string> simulation_preset_names();
bool is_simulation_preset(const std::string& name);
bool is_known_preset(const std::string& name);

/// Config document of a preset, with every field spelled out. Throws
/// ConfigError for unknown names.
nlohmann::json preset_document(const std::string& name);

/// Applies "a.b.c=value" to a document. The value is parsed as JSON when
/// possible and taken as a string otherwise. Unknown keys are rejected.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Merges preset defaults with the document, applies overrides, validates.
/// Exactly one of "preset" or explicit "system" + "drive" must be present.
RunConfig resolve_config(const nlohmann::json& doc, const std::vector<std::string>& overrides = {});

nlohmann::json load_config_file(const std::filesystem::path& path);

/// Fully resolved document; feeding it back to resolve_config reproduces the run.
nlohmann::json to_json(const RunConfig& cfg);

}  // namespace asymtls
