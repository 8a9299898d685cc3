#include "asymtls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace asymtls {

void moving_average(std::span<const double> times, std::span<const double> values, std::size_t window,
                    std::vector<double>& out_times, std::vector<double>& out_values) {
  if (times.size() != values.size()) throw std::invalid_argument("moving_average: size mismatch");
  if (window == 0) throw std::invalid_argument("moving_average: window must be positive");
  out_times.clear();
  out_values.clear();
  if (values.size() < window) return;
  const std::size_t n_out = values.size() - window + 1;
  out_times.reserve(n_out);
  out_values.reserve(n_out);
  // Kahan-compensated running sum
  double sum = 0.0, comp = 0.0;
  auto add = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  for (std::size_t i = 0; i < window; ++i) add(values[i]);
  for (std::size_t i = 0; i < n_out; ++i) {
    if (i > 0) {
      add(values[i + window - 1]);
      add(-values[i - 1]);
    }
    out_values.push_back(sum / static_cast<double>(window));
    out_times.push_back(0.5 * (times[i] + times[i + window - 1]));
  }
}

OscillationEstimate oscillation_frequency(std::span<const double> times, std::span<const double> values,
                                          std::size_t smoothing_samples, double min_amplitude) {
  if (times.size() != values.size() || times.size() < 2) {
    throw std::invalid_argument("oscillation_frequency: need matching series of at least two samples");
  }
  std::vector<double> st, sv;
  moving_average(times, values, std::max<std::size_t>(smoothing_samples, 1), st, sv);
  if (sv.size() < 2) throw std::invalid_argument("oscillation_frequency: record shorter than the smoothing window");

  OscillationEstimate est;
  const auto [lo, hi] = std::minmax_element(sv.begin(), sv.end());
  est.midpoint = 0.5 * (*lo + *hi);
  est.amplitude = 0.5 * (*hi - *lo);
  const double record = st.back() - st.front();
  est.frequency = std::numbers::pi / record;
  if (est.amplitude < min_amplitude) return est;

  const double band = 0.2 * est.amplitude;
  int state = 0;  // +1 above mid+band, -1 below mid-band
  std::size_t last_sign_change = 0;
  bool have_sign_change = false;
  std::vector<double> crossings;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    const double x = sv[i] - est.midpoint;
    if (i > 0) {
      const double xp = sv[i - 1] - est.midpoint;
      if ((xp < 0.0) != (x < 0.0)) {
        last_sign_change = i;
        have_sign_change = true;
      }
    }
    const int new_state = x > band ? 1 : (x < -band ? -1 : state);
    if (state != 0 && new_state != state && have_sign_change) {
      const std::size_t j = last_sign_change;
      const double x0 = sv[j - 1] - est.midpoint, x1 = sv[j] - est.midpoint;
      const double frac = x0 / (x0 - x1);
      crossings.push_back(st[j - 1] + frac * (st[j] - st[j - 1]));
    }
    state = new_state;
  }

  est.crossings = static_cast<int>(crossings.size());
  if (crossings.size() < 2) return est;

  // least-squares slope of crossing time against crossing index = half period
  const double n = static_cast<double>(crossings.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < crossings.size(); ++k) {
    const double x = static_cast<double>(k);
    sx += x;
    sy += crossings[k];
    sxx += x * x;
    sxy += x * crossings[k];
  }
  const double half_period = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  est.frequency = std::numbers::pi / half_period;
  est.resolved = true;
  return est;
}

}  // namespace asymtls
