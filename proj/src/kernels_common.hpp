#pragma once

// Per-element expressions shared by the serial and OpenMP kernels.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "asymtls/kernels.hpp"

namespace asymtls::kernels::detail {

inline void restore_one(double t, cplx ca, cplx cb, const FrameRestoration& r, cplx& out_a, cplx& out_b) {
  const double s = std::sin(r.omega * t);
  const double phase_a = -0.5 * r.omega0 * t + r.phase_amp_a * s;
  const double phase_b = 0.5 * r.omega0 * t + r.phase_amp_b * s;
  out_a = ca * cplx(std::cos(phase_a), std::sin(phase_a));
  out_b = cb * cplx(std::cos(phase_b), std::sin(phase_b));
}

inline double dipole_one(cplx ca, cplx cb, const DipoleMatrix& d) {
  return d.d_aa * std::norm(ca) + d.d_bb * std::norm(cb) + 2.0 * d.d_ab * (std::conj(ca) * cb).real();
}

inline double lines_at(std::span<const SpectralLine> lines, double t) {
  double v = 0.0;
  for (const auto& l : lines) {
    const double ph = l.omega * t;
    v += 2.0 * (l.coef.real() * std::cos(ph) - l.coef.imag() * std::sin(ph));
  }
  return v;
}

inline cplx dft_at(std::span<const double> x, double dt, double omega) {
  // Rotating phasor, re-anchored every 1024 samples to bound rounding drift.
  double re = 0.0, im = 0.0;
  const cplx step{std::cos(omega * dt), -std::sin(omega * dt)};
  cplx ph{1.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i % 1024 == 0) {
      const double a = -omega * dt * static_cast<double>(i);
      ph = {std::cos(a), std::sin(a)};
    }
    re += x[i] * ph.real();
    im += x[i] * ph.imag();
    ph *= step;
  }
  return {re, im};
}

inline void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": span sizes differ");
}

}  // namespace asymtls::kernels::detail
