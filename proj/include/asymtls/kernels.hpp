#pragma once

// Data-parallel inner loops. Every kernel exists twice with the same
// signature: kernels::serial is the plain reference loop, kernels::parallel
// the OpenMP version the library uses. Each output element is computed by the
// same expression in both, so results are bitwise identical.

#include <complex>
#include <span>
#include <vector>

#include "asymtls/dynamics.hpp"
#include "asymtls/model.hpp"

namespace asymtls {

enum class WindowKind { rectangular, hann };

/// One term of a real trigonometric series d(t) = sum_j 2 Re(coef_j e^{i omega_j t}).
struct SpectralLine {
  double omega = 0.0;
  cplx coef{};
};

struct DipoleMatrix {
  double d_aa = 0.0;
  double d_bb = 0.0;
  double d_ab = 0.0;
};

struct RabiMapRow {
  double e_amp = 0.0;
  double kappa = 0.0;
  std::vector<double> omega_r;  ///< index m-1
};

/// Window coefficient of sample i out of n (periodic form).
double window_value(WindowKind kind, std::size_t i, std::size_t n);

namespace kernels {

#define ASYMTLS_KERNEL_SET                                                                                       \
  void restore_original_frame(std::span<const double> times, std::span<const cplx> c_a,                          \
                              std::span<const cplx> c_b, const FrameRestoration& r, std::span<cplx> out_a,       \
                              std::span<cplx> out_b);                                                            \
  void dipole_expectation(std::span<const cplx> c_a, std::span<const cplx> c_b, const DipoleMatrix& d,           \
                          std::span<double> out);                                                                \
  void evaluate_lines(std::span<const SpectralLine> lines, std::span<const double> times, std::span<double> out); \
  void apply_window(std::span<const double> in, WindowKind kind, std::span<double> out);                        \
  void dft_probe(std::span<const double> samples, double dt, std::span<const double> omegas,                     \
                 std::span<cplx> out);                                                                           \
  std::vector<RabiMapRow> rabi_map(const SystemParams& sys, double drive_omega, std::span<const double> e_values, \
                                   int m_max);

namespace serial {
ASYMTLS_KERNEL_SET
}  // namespace serial

namespace parallel {
ASYMTLS_KERNEL_SET
}  // namespace parallel

#undef ASYMTLS_KERNEL_SET

}  // namespace kernels
}  // namespace asymtls
