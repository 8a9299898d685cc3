#include "asymtls/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <omp.h>

#include "asymtls/errors.hpp"
#include "asymtls/table.hpp"

namespace asymtls {

using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void prepare(const CommandContext& ctx) {
  if (!ctx.out_dir.empty()) std::filesystem::create_directories(ctx.out_dir);
}

void write_json(const CommandContext& ctx, const char* name, const json& doc) {
  if (ctx.out_dir.empty()) return;
  const auto path = ctx.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << doc.dump(2) << '\n';
}

void save(const CommandContext& ctx, const char* name, const Table& t) {
  if (!ctx.out_dir.empty()) t.save(ctx.out_dir / name);
}

template <class... Args>
void log(const CommandContext& ctx, fmt::format_string<Args...> f, Args&&... args) {
  if (ctx.log) *ctx.log << fmt::format(f, std::forward<Args>(args)...);
}

json derived_json(const DerivedParams& d) {
  return {{"kappa", d.kappa}, {"m", d.m}, {"delta", d.delta}, {"omega_r", d.omega_r}, {"omega_gen", d.omega_gen}};
}

json validity_json(const ValidityReport& v) {
  json checks = json::array();
  for (const auto& c : v.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"status", to_string(c.status)},
                      {"note", c.note}});
  }
  return {{"all_pass", v.all_pass()}, {"isolated", v.isolation.isolated}, {"checks", checks}};
}

void log_header(const CommandContext& ctx, const char* what, const RunConfig& cfg, const DerivedParams& d) {
  log(ctx, "{}: {}\n", what, cfg.preset.value_or("explicit parameters"));
  log(ctx, "  omega0 = {:.6g}  d_aa = {:.6g}  d_bb = {:.6g}  d_ab = {:.6g}\n", cfg.sys.omega0, cfg.sys.d_aa, cfg.sys.d_bb,
      cfg.sys.d_ab);
  log(ctx, "  E = {:.6g}  omega = {:.6g}  m = {}\n", cfg.drive.e_amp, cfg.drive.omega, cfg.m);
  log(ctx, "  kappa = {:.6g}  Omega_R = {:.6g}  detuning = {:.6g}  Omega = {:.6g}\n", d.kappa, d.omega_r, d.delta,
      d.omega_gen);
}

void log_validity(const CommandContext& ctx, const ValidityReport& v) {
  log(ctx, "validity:\n");
  for (const auto& c : v.checks) {
    log(ctx, "  [{}] {} = {:.4g} (threshold {:.4g}){}{}\n", to_string(c.status), c.name, c.value, c.threshold,
        c.note.empty() ? "" : "  ", c.note);
  }
}

AmplitudeTrajectory integrate(const RunConfig& cfg, double t_end) {
  const auto plan = SamplingPlan::for_run(cfg.sys, cfg.drive, cfg.m);
  const auto& is = cfg.integration;
  if (is.frame == Frame::original) return integrate_exact(cfg.sys, cfg.drive, cfg.init, t_end, plan, is.solver);
  return to_original_frame(integrate_transformed(cfg.sys, cfg.drive, cfg.init, t_end, plan, is.solver));
}

void check_norm(const CommandContext& ctx, const AmplitudeTrajectory& traj) {
  log(ctx, "norm drift = {:.3e} (budget {:.1e}), steps accepted {} rejected {}\n", traj.norm_drift, traj.norm_budget,
      traj.steps_accepted, traj.steps_rejected);
  if (!traj.within_budget()) log(ctx, "warning: norm drift exceeds the budget; tighten rtol/atol\n");
}

std::vector<double> column(const std::vector<cplx>& v, double (*part)(const cplx&)) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = part(v[i]);
  return out;
}

double re(const cplx& z) { return z.real(); }
double im(const cplx& z) { return z.imag(); }

}  // namespace

SimulateResult cmd_simulate(const RunConfig& cfg, const CommandContext& ctx) {
  if (cfg.estimate_only) throw ConfigError(fmt::format("preset '{}' has no dynamics; use estimate", *cfg.preset));
  prepare(ctx);
  SimulateResult r;
  r.derived = derived(cfg.sys, cfg.drive, cfg.m);
  r.validity = rwa_validity(cfg.sys, cfg.drive, cfg.m);
  log_header(ctx, "simulate", cfg, r.derived);

  const double t_end = cfg.horizon();
  r.trajectory = integrate(cfg, t_end);
  r.populations = population(r.trajectory);
  check_norm(ctx, r.trajectory);

  const auto plan = SamplingPlan::for_run(cfg.sys, cfg.drive, cfg.m);
  r.oscillation = oscillation_frequency(r.populations.times, r.populations.p_a,
                                        static_cast<std::size_t>(plan.samples_per_drive_period(cfg.drive)));
  if (r.oscillation.resolved) {
    log(ctx, "population oscillation: frequency {:.6g} (Omega = {:.6g}), swing {:.4g}\n", r.oscillation.frequency,
        r.derived.omega_gen, r.oscillation.amplitude);
  } else {
    log(ctx, "population oscillation: not resolved (frequency < {:.3g}), swing {:.3g}\n", r.oscillation.frequency,
        r.oscillation.amplitude);
  }
  log_validity(ctx, r.validity);

  const auto& t = r.trajectory;
  const auto ra = column(t.c_a, re), ia = column(t.c_a, im), rb = column(t.c_b, re), ib = column(t.c_b, im);
  save(ctx, "trajectory.dat",
       Table::numeric({{"time", "1/omega_unit"}, {"re_c_a", "1"}, {"im_c_a", "1"}, {"re_c_b", "1"}, {"im_c_b", "1"}},
                      {t.times, ra, ia, rb, ib}));
  save(ctx, "populations.dat",
       Table::numeric({{"time", "1/omega_unit"}, {"p_a", "1"}, {"p_b", "1"}},
                      {r.populations.times, r.populations.p_a, r.populations.p_b}));

  r.summary = {{"command", "simulate"},
               {"derived", derived_json(r.derived)},
               {"t_end", t_end},
               {"samples", t.size()},
               {"norm_drift", t.norm_drift},
               {"norm_budget", t.norm_budget},
               {"steps_accepted", t.steps_accepted},
               {"steps_rejected", t.steps_rejected},
               {"oscillation",
                {{"resolved", r.oscillation.resolved},
                 {"frequency", r.oscillation.frequency},
                 {"amplitude", r.oscillation.amplitude},
                 {"crossings", r.oscillation.crossings}}},
               {"validity", validity_json(r.validity)}};
  write_json(ctx, "summary.json", r.summary);
  write_json(ctx, "config.json", to_json(cfg));
  return r;
}

SpectrumResult cmd_spectrum(const RunConfig& cfg, const CommandContext& ctx) {
  if (cfg.estimate_only) throw ConfigError(fmt::format("preset '{}' has no dynamics; use estimate", *cfg.preset));
  SpectrumResult r;
  r.derived = derived(cfg.sys, cfg.drive, cfg.m);
  if (!(r.derived.omega_gen > 0.0)) throw ConfigError("spectrum needs a nonzero generalized Rabi frequency");
  prepare(ctx);
  log_header(ctx, "spectrum", cfg, r.derived);

  const auto& ss = cfg.spectrum;
  const double t_end = ss.rabi_periods * kTwoPi / r.derived.omega_gen;
  DipoleSeries series;
  if (ss.source == DipoleSource::exact) {
    const auto traj = integrate(cfg, t_end);
    check_norm(ctx, traj);
    series = dipole_from_trajectory(traj, cfg.sys);
  } else {
    const auto plan = SamplingPlan::for_run(cfg.sys, cfg.drive, cfg.m);
    const auto n = static_cast<std::size_t>(std::floor(t_end / plan.dt * (1.0 + 1e-12))) + 1;
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = static_cast<double>(i) * plan.dt;
    const auto sol = RwaSolution::make(cfg.sys, cfg.drive, cfg.m, cfg.init);
    series = dipole_from_rwa(sol, times, ss.n_range.value_or(cfg.m + 8));
  }

  PeriodogramOptions opts;
  opts.window = ss.window;
  opts.floor_ratio = ss.floor_ratio;
  opts.required_resolution = r.derived.omega_gen / 16.0;
  r.report = classify_peaks(periodogram(series, opts), r.derived, cfg.drive.omega, ss.n_max);

  log(ctx, "{} samples, resolution {:.4g}, dc offset {:.6g}, {} peaks above {:.1e} of max\n", series.values.size(),
      r.report.resolution, r.report.dc_offset, r.report.peaks.size(), ss.floor_ratio);
  Table peaks;
  peaks.column("omega", "omega_unit")
      .column("amplitude", "dipole_unit")
      .column("power", "dipole_unit^2")
      .column("label", "-")
      .column("predicted_omega", "omega_unit");
  json peak_json = json::array();
  for (const auto& p : r.report.peaks) {
    const std::string label = p.label();
    peaks.add_row({Table::num(p.omega), Table::num(p.amplitude), Table::num(p.power), label,
                   Table::num(p.kind == PeakKind::unidentified ? std::nan("") : p.predicted_omega)});
    peak_json.push_back({{"omega", p.omega}, {"amplitude", p.amplitude}, {"power", p.power}, {"label", label}});
    log(ctx, "  {:<22} omega = {:.6f}  amplitude = {:.4e}\n", label, p.omega, p.amplitude);
  }
  save(ctx, "spectrum.dat",
       Table::numeric({{"omega", "omega_unit"}, {"power", "dipole_unit^2"}}, {r.report.freqs, r.report.power}));
  save(ctx, "peaks.dat", peaks);

  r.summary = {{"command", "spectrum"},
               {"derived", derived_json(r.derived)},
               {"source", to_string(ss.source)},
               {"record_length", t_end},
               {"samples", series.values.size()},
               {"resolution", r.report.resolution},
               {"dc_offset", r.report.dc_offset},
               {"mean_square", r.report.mean_square},
               {"total_power", r.report.total_power()},
               {"peaks", peak_json}};
  write_json(ctx, "summary.json", r.summary);
  write_json(ctx, "config.json", to_json(cfg));
  return r;
}

SweepAxis default_rabi_sweep(const RunConfig& cfg) {
  SweepAxis axis;
  axis.parameter = "drive.e_amp";
  const double split = std::abs(cfg.sys.d_bb - cfg.sys.d_aa);
  axis.stop = split > 0.0 ? 12.0 * cfg.drive.omega / split : 2.0 * std::max(cfg.drive.e_amp, 1.0);
  axis.points = 1201;
  return axis;
}

RabiMapResult cmd_rabi_map(const RunConfig& cfg, const CommandContext& ctx) {
  if (cfg.estimate_only) throw ConfigError(fmt::format("preset '{}' has no dynamics; use estimate", *cfg.preset));
  const SweepAxis axis = cfg.sweep.value_or(default_rabi_sweep(cfg));
  if (axis.parameter != "drive.e_amp") throw ConfigError("rabi-map sweeps drive.e_amp only");
  const auto e_values = axis.values();
  for (double e : e_values)
    if (e < 0.0) throw ConfigError("rabi-map drive amplitudes must be >= 0");
  prepare(ctx);

  RabiMapResult r;
  r.rows = kernels::parallel::rabi_map(cfg.sys, cfg.drive.omega, e_values, cfg.m_max);

  for (int m = 1; m <= cfg.m_max; ++m) {
    const auto idx = static_cast<std::size_t>(m - 1);
    auto f = [&](double e) { return rabi_frequency(cfg.sys, DriveParams{e, cfg.drive.omega}, m); };
    for (std::size_t i = 1; i + 1 < r.rows.size(); ++i) {
      const double a = r.rows[i].omega_r[idx], b = r.rows[i + 1].omega_r[idx];
      if (a == 0.0) {
        if (r.rows[i].e_amp != 0.0)
          r.minima.push_back({m, r.rows[i].e_amp, r.rows[i].kappa, 0.0, true});
        continue;
      }
      if (a * b < 0.0) {
        double lo = r.rows[i].e_amp, hi = r.rows[i + 1].e_amp, flo = a;
        for (int it = 0; it < 200 && std::abs(hi - lo) > 4 * std::numeric_limits<double>::epsilon() * std::abs(hi); ++it) {
          const double mid = 0.5 * (lo + hi);
          const double fm = f(mid);
          if (fm == 0.0) {
            lo = hi = mid;
            break;
          }
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double e = 0.5 * (lo + hi);
        r.minima.push_back({m, e, compute_kappa(cfg.sys, DriveParams{e, cfg.drive.omega}), f(e), true});
      } else if (std::abs(a) < std::abs(r.rows[i - 1].omega_r[idx]) && std::abs(a) <= std::abs(b) &&
                 r.rows[i - 1].omega_r[idx] * a > 0.0) {
        // |Omega_R| dips without crossing zero
        r.minima.push_back({m, r.rows[i].e_amp, r.rows[i].kappa, a, false});
      }
    }
  }

  std::vector<std::pair<std::string, std::string>> header = {{"e_amp", "field_unit"}, {"kappa", "1"}};
  for (int m = 1; m <= cfg.m_max; ++m) header.emplace_back(fmt::format("omega_r_m{}", m), "omega_unit");
  Table map;
  for (const auto& [n, u] : header) map.column(n, u);
  for (const auto& row : r.rows) {
    std::vector<std::string> cells{Table::num(row.e_amp), Table::num(row.kappa)};
    for (double w : row.omega_r) cells.push_back(Table::num(w));
    map.add_row(std::move(cells));
  }
  save(ctx, "rabi_map.dat", map);

  Table minima;
  minima.column("m", "1").column("e_amp", "field_unit").column("kappa", "1").column("omega_r", "omega_unit").column(
      "zero_crossing", "bool");
  log(ctx, "rabi-map: {} drive amplitudes in [{:.6g}, {:.6g}], m = 1..{}\n", e_values.size(), axis.start, axis.stop,
      cfg.m_max);
  for (const auto& mn : r.minima) {
    minima.add_row({Table::num(static_cast<long long>(mn.m)), Table::num(mn.e_amp), Table::num(mn.kappa),
                    Table::num(mn.omega_r), mn.sign_change ? "1" : "0"});
    log(ctx, "  m = {}: minimum at E = {:.10g}, kappa = {:.10g}{}\n", mn.m, mn.e_amp, mn.kappa,
        mn.sign_change ? "" : " (no sign change)");
  }
  save(ctx, "minima.dat", minima);
  RunConfig echo = cfg;
  echo.sweep = axis;
  write_json(ctx, "config.json", to_json(echo));
  return r;
}

json EstimateReport::to_json() const {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  json j = {{"preset", preset},
            {"omega_r_rad_per_s", omega_r},
            {"rabi_frequency_hz", omega_r / kTwoPi},
            {"drive_field_v_per_cm", drive_field_v_per_cm},
            {"effective_dipole_debye", effective_dipole_debye},
            {"static_field_v_per_cm", opt(static_field_v_per_cm)},
            {"intensity_erg_per_s", intensity_erg_per_s},
            {"intensity_w", intensity_w},
            {"intensity_w_per_cm2", opt(intensity_w_per_cm2)},
            {"lambda_r_cm", lambda_r_cm},
            {"omega0_over_omega_r", opt(hierarchy)},
            {"dipole_ratio_vs_hydrogen", opt(dipole_ratio_vs_hydrogen)},
            {"array", nullptr},
            {"warnings", warnings}};
  if (array) {
    j["array"] = {{"size", *array_size},
                  {"per_dot_power_w", array->per_dot_power_w},
                  {"total_power_w", array->total_power_w},
                  {"capacity", array->capacity},
                  {"fits", array->fits}};
  }
  return j;
}

std::string EstimateReport::text() const {
  std::string s = fmt::format("estimate: {}\n", preset);
  s += fmt::format("  Rabi frequency        {:.4g} rad/s ({:.4g} Hz)\n", omega_r, omega_r / kTwoPi);
  if (!hierarchy) {
    s += fmt::format("  driving field         {:.4g} V/cm\n", drive_field_v_per_cm);
    if (static_field_v_per_cm) s += fmt::format("  static field          {:.4g} V/cm\n", *static_field_v_per_cm);
    s += fmt::format("  |d_aa - d_bb|         {:.4g} Debye\n", effective_dipole_debye);
    if (dipole_ratio_vs_hydrogen)
      s += fmt::format("  dipole / hydrogen     {:.4g} at equal static field\n", *dipole_ratio_vs_hydrogen);
    s += fmt::format("  singlet power         {:.4g} erg/s = {:.4g} W\n", intensity_erg_per_s, intensity_w);
  }
  if (intensity_w_per_cm2) s += fmt::format("  per-emitter intensity {:.4g} W/cm^2\n", *intensity_w_per_cm2);
  s += fmt::format("  Rabi wavelength       {:.4g} cm\n", lambda_r_cm);
  if (hierarchy) s += fmt::format("  omega0 / Omega_R      {:.4g}\n", *hierarchy);
  if (array) {
    s += fmt::format("  array of {:.3g} dots: {:.4g} W (capacity {:.3g} dots per lambda_R^2{})\n", *array_size,
                     array->total_power_w, array->capacity, array->fits ? "" : ", exceeded");
  }
  for (const auto& w : warnings) s += fmt::format("  warning: {}\n", w);
  return s;
}

EstimateReport cmd_estimate(const RunConfig& cfg, const CommandContext& ctx) {
  if (!cfg.preset || !is_known_preset(*cfg.preset) || (is_simulation_preset(*cfg.preset) && *cfg.preset != "qubit"))
    throw ConfigError(fmt::format("estimate needs one of the presets qd, qd-array, hydrogen, qubit"));
  const auto& est = cfg.estimate;
  ScenarioPreset p = estimate_preset(*cfg.preset);
  EstimateReport r;
  r.preset = p.name;

  if (p.name == "hydrogen") {
    r.static_field_v_per_cm = est.static_field_v_per_cm.value_or(*p.static_field_v_per_cm);
    p.sys.d_aa = hydrogen_effective_dipole(*r.static_field_v_per_cm, &r.warnings);
    const units::UnitContext u;
    const double per_v_per_cm = hydrogen_rabi(1.0);
    if (est.rabi_frequency_hz) r.drive_field_v_per_cm = kTwoPi * *est.rabi_frequency_hz / per_v_per_cm;
    else r.drive_field_v_per_cm = est.drive_field_v_per_cm.value_or(1e5);
    r.omega_r = hydrogen_rabi(r.drive_field_v_per_cm, &r.warnings);
    const auto qd = qd_preset();
    if (p.sys.d_aa > 0.0) r.dipole_ratio_vs_hydrogen = std::abs(qd.sys.d_aa - qd.sys.d_bb) / p.sys.d_aa;
  } else if (p.name == "qubit") {
    r.omega_r = est.rabi_frequency_hz ? kTwoPi * *est.rabi_frequency_hz : p.sys.d_ab;
    r.drive_field_v_per_cm = r.omega_r / p.sys.d_ab;
    r.hierarchy = p.sys.omega0 / r.omega_r;
  } else {
    if (est.static_field_v_per_cm) r.static_field_v_per_cm = est.static_field_v_per_cm;
    else r.static_field_v_per_cm = p.static_field_v_per_cm;
    if (est.rabi_frequency_hz) {
      r.omega_r = kTwoPi * *est.rabi_frequency_hz;
      r.drive_field_v_per_cm = qd_drive_for_rabi(r.omega_r, p);
    } else if (est.drive_field_v_per_cm) {
      r.drive_field_v_per_cm = *est.drive_field_v_per_cm;
      r.omega_r = qd_rabi_for_drive(r.drive_field_v_per_cm, p);
    } else {
      r.omega_r = kTwoPi * 1e12;
      r.drive_field_v_per_cm = qd_drive_for_rabi(r.omega_r, p);
    }
    if (r.static_field_v_per_cm) {
      const double h = hydrogen_effective_dipole(*r.static_field_v_per_cm);
      if (h > 0.0) r.dipole_ratio_vs_hydrogen = std::abs(p.sys.d_aa - p.sys.d_bb) / h;
    }
  }

  r.effective_dipole_debye = units::UnitContext::statc_cm_to_debye(std::abs(p.sys.d_aa - p.sys.d_bb));
  r.lambda_r_cm = rabi_wavelength_cm(r.omega_r);
  if (p.name != "qubit") {
    r.intensity_erg_per_s = radiated_intensity(p.sys, r.omega_r);
    r.intensity_w = units::UnitContext::erg_per_s_to_watt(r.intensity_erg_per_s);
    if (p.geometry && p.geometry->qd_area_cm2 > 0.0) r.intensity_w_per_cm2 = r.intensity_w / p.geometry->qd_area_cm2;
  }
  const double n = est.array_size.value_or(p.geometry ? p.geometry->array_size : 1.0);
  if (p.geometry && n > 1.0) {
    r.array_size = n;
    r.array = array_power(p, n, r.omega_r);
    if (!r.array->fits)
      r.warnings.push_back(fmt::format("{:.3g} dots exceed the {:.3g} that fit in a lambda_R x lambda_R patch", n,
                                       r.array->capacity));
  }

  prepare(ctx);
  log(ctx, "{}", r.text());
  write_json(ctx, "estimate.json", r.to_json());
  if (!ctx.out_dir.empty()) {
    std::ofstream out(ctx.out_dir / "report.txt", std::ios::binary);
    out << r.text();
  }
  json echo = {{"preset", p.name}, {"estimate", to_json(cfg)["estimate"]}};
  write_json(ctx, "config.json", echo);
  return r;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Driven two-level systems with broken inversion symmetry"};
  app.require_subcommand(1);
  std::string config_path, preset, out_dir = "out";
  int jobs = omp_get_num_procs();
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--preset", preset, "preset name");
  app.add_option("--override", overrides, "key=value, repeatable")->allow_extra_args(false);
  auto* simulate = app.add_subcommand("simulate", "integrate the amplitude equations")->fallthrough();
  auto* spectrum = app.add_subcommand("spectrum", "dipole emission spectrum with peak classification")->fallthrough();
  auto* rabi = app.add_subcommand("rabi-map", "Rabi frequency versus drive amplitude")->fallthrough();
  auto* estimate = app.add_subcommand("estimate", "physical estimates for a preset")->fallthrough();
  auto* export_preset = app.add_subcommand("export-preset", "print a preset as a config file")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (export_preset->parsed()) {
      if (preset.empty()) throw ConfigError("export-preset needs --preset");
      out << preset_document(preset).dump(2) << '\n';
      return kExitOk;
    }
    nlohmann::json doc = config_path.empty() ? nlohmann::json::object() : load_config_file(config_path);
    if (!preset.empty()) {
      if (doc.contains("preset")) throw ConfigError("preset given both on the command line and in the config");
      doc["preset"] = preset;
    }
    const RunConfig cfg = resolve_config(doc, overrides);
    omp_set_num_threads(jobs);
    const CommandContext ctx{out_dir, &out};
    if (simulate->parsed()) cmd_simulate(cfg, ctx);
    else if (spectrum->parsed()) cmd_spectrum(cfg, ctx);
    else if (rabi->parsed()) cmd_rabi_map(cfg, ctx);
    else if (estimate->parsed()) cmd_estimate(cfg, ctx);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure";
    if (!std::isnan(e.time())) err << fmt::format(" at t = {:.6g}", e.time());
    err << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace asymtls
