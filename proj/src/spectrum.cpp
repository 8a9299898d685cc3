#include "asymtls/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace asymtls {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

/// |X_k|^2 of the real input, k = 0..n/2.
std::vector<cplx> real_fft(std::span<const double> input) {
  const int n = static_cast<int>(input.size());
  const int n_out = n / 2 + 1;
  std::unique_ptr<double, FftwDeleter> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwDeleter> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_out)));
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE);
  }
  std::copy(input.begin(), input.end(), in.get());
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<cplx> result(static_cast<std::size_t>(n_out));
  for (int k = 0; k < n_out; ++k) result[k] = {out.get()[k][0], out.get()[k][1]};
  return result;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x); }

/// Normalized magnitude response of the window at a fractional bin offset.
double kernel_gain(WindowKind kind, double delta) {
  if (kind == WindowKind::rectangular) return std::abs(sinc(delta));
  const double d2 = delta * delta;
  if (std::abs(1.0 - d2) < 1e-12) return 0.5;
  return std::abs(sinc(delta) / (1.0 - d2));
}

/// Fractional offset of a tone from the peak bin, from the three magnitudes.
double bin_offset(WindowKind kind, double left, double mid, double right) {
  if (kind == WindowKind::hann) {
    // |X_{k+1}| / |X_k| = (1 + d) / (2 - d) for a tone at k + d
    if (right >= left) {
      const double r = right / mid;
      return (2.0 * r - 1.0) / (1.0 + r);
    }
    const double r = left / mid;
    return -(2.0 * r - 1.0) / (1.0 + r);
  }
  // rectangular: |X_{k+1}| / |X_k| = d / (1 - d)
  if (right >= left) {
    const double r = right / mid;
    return r / (1.0 + r);
  }
  const double r = left / mid;
  return -r / (1.0 + r);
}

}  // namespace

const char* to_string(DipoleSource s) { return s == DipoleSource::exact ? "exact" : "rwa"; }

const char* to_string(PeakKind k) {
  switch (k) {
    case PeakKind::singlet:
      return "singlet";
    case PeakKind::triplet:
      return "triplet";
    case PeakKind::unidentified:
      return "unidentified";
  }
  return "?";
}

const char* to_string(TripletMember m) {
  switch (m) {
    case TripletMember::lower:
      return "lower";
    case TripletMember::center:
      return "center";
    case TripletMember::upper:
      return "upper";
  }
  return "?";
}

std::string Peak::label() const {
  switch (kind) {
    case PeakKind::singlet:
      return "singlet";
    case PeakKind::triplet:
      return fmt::format("triplet(n={},{})", n, to_string(member));
    case PeakKind::unidentified:
      break;
  }
  return "unidentified";
}

double SpectrumReport::total_power() const { return std::accumulate(power.begin(), power.end(), 0.0); }

const Peak* SpectrumReport::find(PeakKind kind, int n, TripletMember member) const {
  for (const auto& p : peaks) {
    if (p.kind != kind) continue;
    if (kind == PeakKind::triplet && (p.n != n || p.member != member)) continue;
    return &p;
  }
  return nullptr;
}

namespace {

DipoleSeries finish_series(std::vector<double> times, std::vector<double> values, DipoleSource source) {
  if (times.size() < 2) throw std::invalid_argument("dipole series needs at least two samples");
  DipoleSeries s;
  s.source = source;
  s.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (std::abs(times[i] - times[i - 1] - s.dt) > 1e-9 * s.dt) {
      throw std::invalid_argument("dipole series requires a uniform time grid");
    }
  }
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("dipole series contains nonfinite values");
    sum += v;
  }
  s.dc_offset = sum / static_cast<double>(values.size());
  for (double& v : values) v -= s.dc_offset;
  s.times = std::move(times);
  s.values = std::move(values);
  return s;
}

}  // namespace

DipoleSeries dipole_from_trajectory(const AmplitudeTrajectory& traj, const SystemParams& sys) {
  const AmplitudeTrajectory original = to_original_frame(traj);
  std::vector<double> values(original.size());
  kernels::parallel::dipole_expectation(original.c_a, original.c_b, {sys.d_aa, sys.d_bb, sys.d_ab}, values);
  return finish_series(original.times, std::move(values), DipoleSource::exact);
}

DipoleSeries dipole_from_rwa(const RwaSolution& sol, std::span<const double> times, int n_range) {
  auto values = dipole_rwa_series(sol, times, n_range);
  return finish_series(std::vector<double>(times.begin(), times.end()), std::move(values), DipoleSource::rwa);
}

SpectrumReport periodogram(const DipoleSeries& series, const PeriodogramOptions& opts) {
  const std::size_t n = series.values.size();
  if (n < 16) throw std::invalid_argument("periodogram: need at least 16 samples");
  if (!(series.dt > 0.0)) throw std::invalid_argument("periodogram: invalid sample spacing");

  SpectrumReport rep;
  rep.window = opts.window;
  rep.dc_offset = series.dc_offset;
  rep.resolution = 2.0 * std::numbers::pi / (static_cast<double>(n) * series.dt);
  if (opts.required_resolution > 0.0 && rep.resolution > opts.required_resolution) {
    throw std::invalid_argument(fmt::format(
        "periodogram: record of {} samples gives bin width {:.4g}, coarser than the requested {:.4g}", n,
        rep.resolution, opts.required_resolution));
  }

  std::vector<double> windowed(n);
  kernels::parallel::apply_window(series.values, opts.window, windowed);
  double w_sum = 0.0, w_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = window_value(opts.window, i, n);
    w_sum += w;
    w_sq += w * w;
  }
  double ms = 0.0;
  for (double v : series.values) ms += v * v;
  rep.mean_square = ms / static_cast<double>(n);

  const auto spectrum = real_fft(windowed);
  const std::size_t n_bins = spectrum.size();
  rep.freqs.resize(n_bins);
  rep.power.resize(n_bins);
  std::vector<double> magnitude(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    rep.freqs[k] = rep.resolution * static_cast<double>(k);
    magnitude[k] = std::abs(spectrum[k]);
    const bool doubled = k != 0 && !(n % 2 == 0 && k == n / 2);
    rep.power[k] = (doubled ? 2.0 : 1.0) * magnitude[k] * magnitude[k] / (static_cast<double>(n) * w_sq);
  }

  const double max_power = *std::max_element(rep.power.begin() + 1, rep.power.end());
  rep.noise_floor = opts.floor_ratio * max_power;
  const auto hw = static_cast<std::size_t>(std::max(opts.neighbourhood, 1));
  for (std::size_t k = 1; k + 1 < n_bins; ++k) {
    if (rep.power[k] <= rep.noise_floor) continue;
    bool is_max = true;
    const std::size_t lo = k > hw ? k - hw : 1;
    const std::size_t hi = std::min(n_bins - 1, k + hw);
    for (std::size_t j = lo; j <= hi && is_max; ++j) {
      if (j == k) continue;
      if (rep.power[j] > rep.power[k] || (rep.power[j] == rep.power[k] && j < k)) is_max = false;
    }
    if (!is_max) continue;
    Peak p;
    p.bin = k;
    p.power = rep.power[k];
    const double delta = std::clamp(bin_offset(opts.window, magnitude[k - 1], magnitude[k], magnitude[k + 1]), -0.5, 0.5);
    p.omega = (static_cast<double>(k) + delta) * rep.resolution;
    p.amplitude = 2.0 * magnitude[k] / (w_sum * kernel_gain(opts.window, delta));
    rep.peaks.push_back(p);
  }
  return rep;
}

SpectrumReport classify_peaks(SpectrumReport report, const DerivedParams& derived, double drive_omega, int n_max) {
  struct Line {
    double omega;
    PeakKind kind;
    int n;
    TripletMember member;
  };
  const double big_omega = derived.omega_gen;
  std::vector<Line> lines;
  if (big_omega > 0.0) lines.push_back({big_omega, PeakKind::singlet, 0, TripletMember::center});
  for (int n = 1; n <= n_max; ++n) {
    lines.push_back({n * drive_omega, PeakKind::triplet, n, TripletMember::center});
    if (big_omega > 0.0) {
      lines.push_back({n * drive_omega - big_omega, PeakKind::triplet, n, TripletMember::lower});
      lines.push_back({n * drive_omega + big_omega, PeakKind::triplet, n, TripletMember::upper});
    }
  }
  const double tolerance = big_omega > 0.0 ? 0.5 * big_omega : 0.5 * drive_omega;

  std::vector<int> owner(lines.size(), -1);
  for (std::size_t i = 0; i < report.peaks.size(); ++i) {
    auto& p = report.peaks[i];
    p.kind = PeakKind::unidentified;
    p.n = 0;
    p.member = TripletMember::center;
    p.predicted_omega = 0.0;
    int best = -1;
    double best_dist = tolerance;
    for (std::size_t j = 0; j < lines.size(); ++j) {
      const double d = std::abs(p.omega - lines[j].omega);
      if (d <= best_dist) {
        best = static_cast<int>(j);
        best_dist = d;
      }
    }
    if (best < 0) continue;
    const int prev = owner[best];
    if (prev >= 0 && report.peaks[prev].amplitude >= p.amplitude) continue;
    if (prev >= 0) {
      report.peaks[prev].kind = PeakKind::unidentified;
      report.peaks[prev].n = 0;
      report.peaks[prev].predicted_omega = 0.0;
    }
    owner[best] = static_cast<int>(i);
    p.kind = lines[best].kind;
    p.n = lines[best].n;
    p.member = lines[best].member;
    p.predicted_omega = lines[best].omega;
  }
  return report;
}

double radiated_intensity(const SystemParams& sys, double omega_r, double c) {
  const double diff = sys.d_aa - sys.d_bb;
  const double w2 = omega_r * omega_r;
  return diff * diff * w2 * w2 / (12.0 * c * c * c);
}

}  // namespace asymtls
