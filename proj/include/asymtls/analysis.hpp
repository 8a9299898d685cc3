#pragma once

#include <span>
#include <vector>

namespace asymtls {

/// Slow-oscillation frequency of a sampled signal, read from mid-level
/// crossings of its drive-period average.
struct OscillationEstimate {
  double frequency = 0.0;  ///< angular; an upper bound when !resolved
  double amplitude = 0.0;  ///< half the peak-to-peak swing of the smoothed signal
  double midpoint = 0.0;
  int crossings = 0;
  bool resolved = false;
};

/// Centered boxcar average over `window` samples (edges dropped). Returned
/// times are the window centers.
void moving_average(std::span<const double> times, std::span<const double> values, std::size_t window,
                    std::vector<double>& out_times, std::vector<double>& out_values);

/// Averages over `smoothing_samples` (one drive period removes every drive
/// harmonic), then fits crossing times of the midpoint level with hysteresis
/// of 20% of the swing. Fewer than two crossings leaves the estimate
/// unresolved with frequency = pi / record length. Swings below min_amplitude
/// count as no oscillation.
OscillationEstimate oscillation_frequency(std::span<const double> times, std::span<const double> values,
                                          std::size_t smoothing_samples, double min_amplitude = 1e-9);

}  // namespace asymtls
