#include <exception>

#include "asymtls/kernels.hpp"
#include "kernels_common.hpp"

namespace asymtls::kernels::parallel {

namespace {

using index_t = std::ptrdiff_t;

index_t signed_size(std::size_t n) { return static_cast<index_t>(n); }

}  // namespace

void restore_original_frame(std::span<const double> times, std::span<const cplx> c_a, std::span<const cplx> c_b,
                            const FrameRestoration& r, std::span<cplx> out_a, std::span<cplx> out_b) {
  detail::check_same_size(times.size(), c_a.size(), "restore_original_frame");
  detail::check_same_size(times.size(), c_b.size(), "restore_original_frame");
  detail::check_same_size(times.size(), out_a.size(), "restore_original_frame");
  detail::check_same_size(times.size(), out_b.size(), "restore_original_frame");
  const index_t n = signed_size(times.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) detail::restore_one(times[i], c_a[i], c_b[i], r, out_a[i], out_b[i]);
}

void dipole_expectation(std::span<const cplx> c_a, std::span<const cplx> c_b, const DipoleMatrix& d,
                        std::span<double> out) {
  detail::check_same_size(c_a.size(), c_b.size(), "dipole_expectation");
  detail::check_same_size(c_a.size(), out.size(), "dipole_expectation");
  const index_t n = signed_size(c_a.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) out[i] = detail::dipole_one(c_a[i], c_b[i], d);
}

void evaluate_lines(std::span<const SpectralLine> lines, std::span<const double> times, std::span<double> out) {
  detail::check_same_size(times.size(), out.size(), "evaluate_lines");
  const index_t n = signed_size(times.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) out[i] = detail::lines_at(lines, times[i]);
}

void apply_window(std::span<const double> in, WindowKind kind, std::span<double> out) {
  detail::check_same_size(in.size(), out.size(), "apply_window");
  const index_t n = signed_size(in.size());
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < n; ++i) out[i] = in[i] * window_value(kind, static_cast<std::size_t>(i), in.size());
}

void dft_probe(std::span<const double> samples, double dt, std::span<const double> omegas, std::span<cplx> out) {
  detail::check_same_size(omegas.size(), out.size(), "dft_probe");
  const index_t n = signed_size(omegas.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (index_t k = 0; k < n; ++k) out[k] = detail::dft_at(samples, dt, omegas[k]);
}

std::vector<RabiMapRow> rabi_map(const SystemParams& sys, double drive_omega, std::span<const double> e_values,
                                 int m_max) {
  std::vector<RabiMapRow> rows(e_values.size());
  const index_t n = signed_size(e_values.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (index_t i = 0; i < n; ++i) {
    try {
      const DriveParams drive{e_values[i], drive_omega};
      rows[i].e_amp = e_values[i];
      rows[i].kappa = compute_kappa(sys, drive);
      rows[i].omega_r.resize(static_cast<std::size_t>(m_max));
      for (int m = 1; m <= m_max; ++m) rows[i].omega_r[m - 1] = rabi_frequency(sys, drive, m);
    } catch (...) {
#pragma omp critical(asymtls_rabi_map_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace asymtls::kernels::parallel
