#include "asymtls/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/core.h>

#include "asymtls/scenarios.hpp"

namespace asymtls {

using nlohmann::json;

namespace {

constexpr double kFirstJ1Zero = 3.8317059702075123;

const std::set<std::string> kTopLevelKeys = {"preset",      "label",    "system", "drive",    "resonance", "initial",
                                             "integration", "spectrum", "sweep",  "rabi_map", "estimate"};

const std::set<std::string> kSweepable = {"system.omega0", "system.d_aa", "system.d_bb",
                                          "system.d_ab",   "drive.e_amp", "drive.omega"};

json system_json(const SystemParams& s) {
  json j = {{"omega0", s.omega0}, {"d_aa", s.d_aa}, {"d_bb", s.d_bb}, {"d_ab", s.d_ab}, {"tau", nullptr}};
  if (s.tau) j["tau"] = *s.tau;
  return j;
}

json drive_json(const DriveParams& d) { return {{"e_amp", d.e_amp}, {"omega", d.omega}}; }

json designed(double omega0, int m, double kappa, double omega_r) {
  const auto d = design_resonant_system(omega0, m, kappa, omega_r);
  return {{"system", system_json(d.sys)}, {"drive", drive_json(d.drive)}, {"resonance", m}};
}

template <class T>
T read(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(fmt::format("{}.{} has the wrong type", where, key));
  }
}

template <class T>
std::optional<T> read_opt(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return read<T>(obj, key, T{}, where);
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  if (!doc.contains(key) || doc.at(key).is_null()) return empty;
  if (!doc.at(key).is_object()) throw ConfigError(fmt::format("section '{}' must be an object", key));
  return doc.at(key);
}

cplx read_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + " must be a number or [re, im]");
}

/// Schema used to reject unknown keys: a default config with every optional slot present.
json schema() {
  RunConfig cfg;
  cfg.sys.d_ab = 1.0;
  json s = to_json(cfg);
  s["preset"] = "";
  s["sweep"] = {{"parameter", ""}, {"start", 0.0}, {"stop", 0.0}, {"points", 0}};
  s["estimate"] = {{"array_size", nullptr},
                   {"drive_field_v_per_cm", nullptr},
                   {"static_field_v_per_cm", nullptr},
                   {"rabi_frequency_hz", nullptr}};
  return s;
}

void check_keys(const json& doc, const json& ref, const std::string& prefix) {
  for (const auto& [key, value] : doc.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!ref.contains(key)) throw ConfigError(fmt::format("unknown config key '{}'", path));
    if (value.is_object() && ref.at(key).is_object()) check_keys(value, ref.at(key), path);
  }
}

template <class F>
void rethrow_as_config(F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    v[static_cast<std::size_t>(i)] = i == points - 1 ? stop : start + f * (stop - start);
  }
  return v;
}

double RunConfig::horizon() const {
  if (integration.t_end) return *integration.t_end;
  const auto d = derived(sys, drive, m);
  if (d.omega_gen > 0.0) return integration.rabi_periods * 2.0 * M_PI / d.omega_gen;
  return integration.drive_periods * 2.0 * M_PI / drive.omega;
}

std::vector<std::string> simulation_preset_names() {
  return {"symmetric", "asymmetric", "subharmonic", "bessel-zero", "qubit"};
}

bool is_simulation_preset(const std::string& name) {
  const auto names = simulation_preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_known_preset(const std::string& name) {
  const auto est = estimate_preset_names();
  return is_simulation_preset(name) || std::find(est.begin(), est.end(), name) != est.end();
}

json preset_document(const std::string& name) {
  json doc;
  if (name == "symmetric") {
    doc = {{"system", {{"omega0", 1.0}, {"d_aa", 0.0}, {"d_bb", 0.0}, {"d_ab", 0.01}, {"tau", nullptr}}},
           {"drive", {{"e_amp", 1.0}, {"omega", 1.0}}},
           {"resonance", 1}};
  } else if (name == "asymmetric") {
    doc = designed(1.0, 1, 0.5, 0.01);
  } else if (name == "subharmonic") {
    doc = designed(1.0, 2, 0.5, 0.005);
  } else if (name == "bessel-zero") {
    // conventional Rabi frequency E d_ab = 0.01, kappa on the first zero of J_1
    doc = {{"system", {{"omega0", 1.0}, {"d_aa", -kFirstJ1Zero / 2}, {"d_bb", kFirstJ1Zero / 2}, {"d_ab", 0.01},
                       {"tau", nullptr}}},
           {"drive", {{"e_amp", 1.0}, {"omega", 1.0}}},
           {"resonance", 1},
           {"integration", {{"t_end", 2.0 * M_PI / 0.01 * 4}}},
           {"sweep", {{"parameter", "drive.e_amp"}, {"start", 0.0}, {"stop", 2.5}, {"points", 2001}}}};
  } else if (name == "qubit") {
    const auto q = qubit_simulation();
    doc = {{"system", system_json(q.sys)}, {"drive", drive_json(q.drive)}, {"resonance", q.m}};
  } else if (is_known_preset(name)) {
    const auto p = estimate_preset(name);
    doc = {{"preset", name}, {"estimate", {{"array_size", nullptr},
                                           {"drive_field_v_per_cm", nullptr},
                                           {"static_field_v_per_cm", nullptr},
                                           {"rabi_frequency_hz", nullptr}}}};
    if (p.geometry && p.geometry->array_size > 1.0) doc["estimate"]["array_size"] = p.geometry->array_size;
    return doc;
  } else {
    throw ConfigError(fmt::format("unknown preset '{}'", name));
  }
  doc["label"] = name;
  return doc;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError(fmt::format("override '{}' is not key=value", assignment));
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);

  static const json ref = schema();
  const json* r = &ref;
  json* node = &doc;
  std::size_t pos = 0;
  while (true) {
    const auto dot = key.find('.', pos);
    const std::string part = key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (part.empty() || !r->is_object() || !r->contains(part)) throw ConfigError(fmt::format("unknown override key '{}'", key));
    r = &r->at(part);
    if (dot == std::string::npos) {
      json value = json::parse(text, nullptr, false);
      if (value.is_discarded()) value = text;
      (*node)[part] = value;
      return;
    }
    if (!node->contains(part) || !(*node)[part].is_object()) (*node)[part] = json::object();
    node = &(*node)[part];
    pos = dot + 1;
  }
}

RunConfig resolve_config(const json& input, const std::vector<std::string>& overrides) {
  if (!input.is_object()) throw ConfigError("config must be a JSON object");
  static const json ref = schema();
  check_keys(input, ref, "");

  const bool has_preset = input.contains("preset") && !input.at("preset").is_null();
  const bool has_explicit = input.contains("system") || input.contains("drive");
  if (has_preset == has_explicit)
    throw ConfigError("config needs exactly one of 'preset' or explicit 'system' + 'drive'");

  json doc = input;
  RunConfig cfg;
  if (has_preset) {
    if (!input.at("preset").is_string()) throw ConfigError("preset must be a string");
    const std::string name = input.at("preset").get<std::string>();
    json base = preset_document(name);
    base.merge_patch(input);
    doc = std::move(base);
    cfg.preset = name;
    if (is_simulation_preset(name)) doc.erase("preset");
  } else if (!(input.contains("system") && input.contains("drive"))) {
    throw ConfigError("explicit configs need both 'system' and 'drive'");
  }
  for (const auto& o : overrides) apply_override(doc, o);
  check_keys(doc, ref, "");

  if (doc.contains("label") && doc["label"].is_string() && !cfg.preset) cfg.preset = doc["label"].get<std::string>();

  try {
    const json& sys = section(doc, "system");
    cfg.sys.omega0 = read(sys, "omega0", cfg.sys.omega0, "system");
    cfg.sys.d_aa = read(sys, "d_aa", cfg.sys.d_aa, "system");
    cfg.sys.d_bb = read(sys, "d_bb", cfg.sys.d_bb, "system");
    cfg.sys.d_ab = read(sys, "d_ab", cfg.sys.d_ab, "system");
    cfg.sys.tau = read_opt<double>(sys, "tau", "system");

    const json& drive = section(doc, "drive");
    cfg.drive.e_amp = read(drive, "e_amp", cfg.drive.e_amp, "drive");
    cfg.drive.omega = read(drive, "omega", cfg.drive.omega, "drive");
    cfg.m = read(doc, "resonance", cfg.m, "");

    if (doc.contains("initial") && !doc["initial"].is_null()) {
      const json& init = doc["initial"];
      if (init.is_string()) {
        const auto s = init.get<std::string>();
        if (s == "excited") cfg.init = InitialState::excited();
        else if (s == "ground") cfg.init = InitialState::ground();
        else throw ConfigError("initial must be 'excited', 'ground' or {c_a, c_b}");
      } else if (init.is_object()) {
        check_keys(init, json{{"c_a", 0}, {"c_b", 0}}, "initial");
        cfg.init.c_a0 = init.contains("c_a") ? read_complex(init["c_a"], "initial.c_a") : cplx{};
        cfg.init.c_b0 = init.contains("c_b") ? read_complex(init["c_b"], "initial.c_b") : cplx{};
      } else {
        throw ConfigError("initial must be a string or an object");
      }
    }

    const json& integ = section(doc, "integration");
    auto& is = cfg.integration;
    is.t_end = read_opt<double>(integ, "t_end", "integration");
    is.rabi_periods = read(integ, "rabi_periods", is.rabi_periods, "integration");
    is.drive_periods = read(integ, "drive_periods", is.drive_periods, "integration");
    const auto frame = read<std::string>(integ, "frame", "original", "integration");
    if (frame == "original") is.frame = Frame::original;
    else if (frame == "transformed") is.frame = Frame::transformed;
    else throw ConfigError("integration.frame must be 'original' or 'transformed'");
    is.solver.rtol = read(integ, "rtol", is.solver.rtol, "integration");
    is.solver.atol = read(integ, "atol", is.solver.atol, "integration");
    is.solver.n_trunc = read(integ, "n_trunc", is.solver.n_trunc, "integration");
    is.solver.norm_budget = read(integ, "norm_budget", is.solver.norm_budget, "integration");
    is.solver.max_steps = read(integ, "max_steps", is.solver.max_steps, "integration");

    const json& spec = section(doc, "spectrum");
    auto& ss = cfg.spectrum;
    const auto window = read<std::string>(spec, "window", "hann", "spectrum");
    if (window == "hann") ss.window = WindowKind::hann;
    else if (window == "rectangular") ss.window = WindowKind::rectangular;
    else throw ConfigError("spectrum.window must be 'hann' or 'rectangular'");
    ss.rabi_periods = read(spec, "rabi_periods", ss.rabi_periods, "spectrum");
    ss.n_max = read(spec, "n_max", ss.n_max, "spectrum");
    const auto source = read<std::string>(spec, "source", "exact", "spectrum");
    if (source == "exact") ss.source = DipoleSource::exact;
    else if (source == "rwa") ss.source = DipoleSource::rwa;
    else throw ConfigError("spectrum.source must be 'exact' or 'rwa'");
    ss.n_range = read_opt<int>(spec, "n_range", "spectrum");
    ss.floor_ratio = read(spec, "floor_ratio", ss.floor_ratio, "spectrum");

    if (doc.contains("sweep") && !doc["sweep"].is_null()) {
      const json& sw = section(doc, "sweep");
      SweepAxis axis;
      axis.parameter = read<std::string>(sw, "parameter", "", "sweep");
      axis.start = read(sw, "start", 0.0, "sweep");
      axis.stop = read(sw, "stop", 0.0, "sweep");
      axis.points = read(sw, "points", 0, "sweep");
      cfg.sweep = axis;
    }
    cfg.m_max = read(section(doc, "rabi_map"), "m_max", cfg.m_max, "rabi_map");

    const json& est = section(doc, "estimate");
    cfg.estimate.array_size = read_opt<double>(est, "array_size", "estimate");
    cfg.estimate.drive_field_v_per_cm = read_opt<double>(est, "drive_field_v_per_cm", "estimate");
    cfg.estimate.static_field_v_per_cm = read_opt<double>(est, "static_field_v_per_cm", "estimate");
    cfg.estimate.rabi_frequency_hz = read_opt<double>(est, "rabi_frequency_hz", "estimate");
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }

  cfg.estimate_only = cfg.preset && !is_simulation_preset(*cfg.preset) && !has_explicit;
  if (!cfg.estimate_only) {
    rethrow_as_config([&] {
      cfg.sys.validate();
      cfg.drive.validate();
      cfg.init.validate();
      cfg.integration.solver.validate();
    });
    if (cfg.m < 1) throw ConfigError("resonance must be >= 1");
    if (cfg.integration.t_end && !(*cfg.integration.t_end > 0.0 && std::isfinite(*cfg.integration.t_end)))
      throw ConfigError("integration.t_end must be > 0");
    if (!(cfg.integration.rabi_periods > 0.0) || !(cfg.integration.drive_periods > 0.0))
      throw ConfigError("integration periods must be > 0");
    if (!(cfg.spectrum.rabi_periods >= 16.0)) throw ConfigError("spectrum.rabi_periods must be >= 16");
    if (cfg.spectrum.n_max < 1) throw ConfigError("spectrum.n_max must be >= 1");
    if (cfg.spectrum.n_range && *cfg.spectrum.n_range < cfg.m + 3)
      throw ConfigError("spectrum.n_range must be >= resonance + 3");
    if (!(cfg.spectrum.floor_ratio > 0.0 && cfg.spectrum.floor_ratio < 1.0))
      throw ConfigError("spectrum.floor_ratio must lie in (0, 1)");
    if (cfg.m_max < 1) throw ConfigError("rabi_map.m_max must be >= 1");
  }
  if (cfg.sweep) {
    const auto& s = *cfg.sweep;
    if (!kSweepable.count(s.parameter)) throw ConfigError(fmt::format("sweep parameter '{}' does not exist", s.parameter));
    if (s.points < 2) throw ConfigError("sweep.points must be >= 2");
    if (!std::isfinite(s.start) || !std::isfinite(s.stop) || s.start == s.stop)
      throw ConfigError("sweep range must be finite and nonempty");
  }
  if (cfg.estimate.array_size && !(*cfg.estimate.array_size >= 1.0)) throw ConfigError("estimate.array_size must be >= 1");
  for (const auto& f : {cfg.estimate.drive_field_v_per_cm, cfg.estimate.static_field_v_per_cm,
                        cfg.estimate.rabi_frequency_hz}) {
    if (f && !(*f >= 0.0 && std::isfinite(*f))) throw ConfigError("estimate fields must be finite and >= 0");
  }
  return cfg;
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
  json doc = json::parse(in, nullptr, false, true);
  if (doc.is_discarded()) throw ConfigError(fmt::format("'{}' is not valid JSON", path.string()));
  return doc;
}

json to_json(const RunConfig& cfg) {
  json estimate = {{"array_size", nullptr},
                   {"drive_field_v_per_cm", nullptr},
                   {"static_field_v_per_cm", nullptr},
                   {"rabi_frequency_hz", nullptr}};
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v) estimate[k] = *v;
  };
  put("array_size", cfg.estimate.array_size);
  put("drive_field_v_per_cm", cfg.estimate.drive_field_v_per_cm);
  put("static_field_v_per_cm", cfg.estimate.static_field_v_per_cm);
  put("rabi_frequency_hz", cfg.estimate.rabi_frequency_hz);

  if (cfg.estimate_only)
    return {{"preset", *cfg.preset}, {"estimate", estimate}};

  const auto& is = cfg.integration;
  const auto& ss = cfg.spectrum;
  json doc = {
      {"label", cfg.preset ? json(*cfg.preset) : json(nullptr)},
      {"system", system_json(cfg.sys)},
      {"drive", drive_json(cfg.drive)},
      {"resonance", cfg.m},
      {"initial", {{"c_a", {cfg.init.c_a0.real(), cfg.init.c_a0.imag()}}, {"c_b", {cfg.init.c_b0.real(), cfg.init.c_b0.imag()}}}},
      {"integration",
       {{"t_end", is.t_end ? json(*is.t_end) : json(nullptr)},
        {"rabi_periods", is.rabi_periods},
        {"drive_periods", is.drive_periods},
        {"frame", to_string(is.frame)},
        {"rtol", is.solver.rtol},
        {"atol", is.solver.atol},
        {"n_trunc", is.solver.n_trunc},
        {"norm_budget", is.solver.norm_budget},
        {"max_steps", is.solver.max_steps}}},
      {"spectrum",
       {{"window", ss.window == WindowKind::hann ? "hann" : "rectangular"},
        {"rabi_periods", ss.rabi_periods},
        {"n_max", ss.n_max},
        {"source", to_string(ss.source)},
        {"n_range", ss.n_range ? json(*ss.n_range) : json(nullptr)},
        {"floor_ratio", ss.floor_ratio}}},
      {"sweep", nullptr},
      {"rabi_map", {{"m_max", cfg.m_max}}},
      {"estimate", estimate}};
  if (cfg.sweep) {
    doc["sweep"] = {{"parameter", cfg.sweep->parameter},
                    {"start", cfg.sweep->start},
                    {"stop", cfg.sweep->stop},
                    {"points", cfg.sweep->points}};
  }
  return doc;
}

}  // namespace asymtls
