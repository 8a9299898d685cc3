#include <cmath>
#include <numbers>

#include "asymtls/kernels.hpp"
#include "kernels_common.hpp"

namespace asymtls {

double window_value(WindowKind kind, std::size_t i, std::size_t n) {
  if (kind == WindowKind::rectangular) return 1.0;
  return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
}

}  // namespace asymtls

namespace asymtls::kernels::serial {

void restore_original_frame(std::span<const double> times, std::span<const cplx> c_a, std::span<const cplx> c_b,
                            const FrameRestoration& r, std::span<cplx> out_a, std::span<cplx> out_b) {
  detail::check_same_size(times.size(), c_a.size(), "restore_original_frame");
  detail::check_same_size(times.size(), c_b.size(), "restore_original_frame");
  detail::check_same_size(times.size(), out_a.size(), "restore_original_frame");
  detail::check_same_size(times.size(), out_b.size(), "restore_original_frame");
  for (std::size_t i = 0; i < times.size(); ++i) detail::restore_one(times[i], c_a[i], c_b[i], r, out_a[i], out_b[i]);
}

void dipole_expectation(std::span<const cplx> c_a, std::span<const cplx> c_b, const DipoleMatrix& d,
                        std::span<double> out) {
  detail::check_same_size(c_a.size(), c_b.size(), "dipole_expectation");
  detail::check_same_size(c_a.size(), out.size(), "dipole_expectation");
  for (std::size_t i = 0; i < c_a.size(); ++i) out[i] = detail::dipole_one(c_a[i], c_b[i], d);
}

void evaluate_lines(std::span<const SpectralLine> lines, std::span<const double> times, std::span<double> out) {
  detail::check_same_size(times.size(), out.size(), "evaluate_lines");
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = detail::lines_at(lines, times[i]);
}

void apply_window(std::span<const double> in, WindowKind kind, std::span<double> out) {
  detail::check_same_size(in.size(), out.size(), "apply_window");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] * window_value(kind, i, in.size());
}

void dft_probe(std::span<const double> samples, double dt, std::span<const double> omegas, std::span<cplx> out) {
  detail::check_same_size(omegas.size(), out.size(), "dft_probe");
  for (std::size_t k = 0; k < omegas.size(); ++k) out[k] = detail::dft_at(samples, dt, omegas[k]);
}

std::vector<RabiMapRow> rabi_map(const SystemParams& sys, double drive_omega, std::span<const double> e_values,
                                 int m_max) {
  std::vector<RabiMapRow> rows(e_values.size());
  for (std::size_t i = 0; i < e_values.size(); ++i) {
    const DriveParams drive{e_values[i], drive_omega};
    rows[i].e_amp = e_values[i];
    rows[i].kappa = compute_kappa(sys, drive);
    rows[i].omega_r.resize(static_cast<std::size_t>(m_max));
    for (int m = 1; m <= m_max; ++m) rows[i].omega_r[m - 1] = rabi_frequency(sys, drive, m);
  }
  return rows;
}

}  // namespace asymtls::kernels::serial
