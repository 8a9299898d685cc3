#include "asymtls/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "asymtls/bessel.hpp"

namespace asymtls {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

void SystemParams::validate() const {
  require_finite(omega0, "omega0");
  require_finite(d_aa, "d_aa");
  require_finite(d_bb, "d_bb");
  require_finite(d_ab, "d_ab");
  if (omega0 <= 0.0) throw std::invalid_argument("omega0 must be positive");
  if (d_ab == 0.0) throw std::invalid_argument("d_ab must be nonzero");
  if (tau && !(*tau > 0.0 && std::isfinite(*tau))) throw std::invalid_argument("tau must be positive");
}

void DriveParams::validate() const {
  require_finite(e_amp, "e_amp");
  require_finite(omega, "omega");
  if (omega <= 0.0) throw std::invalid_argument("drive omega must be positive");
  if (e_amp < 0.0) throw std::invalid_argument("e_amp must be nonnegative");
}

double compute_kappa(const SystemParams& sys, const DriveParams& drive) {
  require_finite(sys.d_aa, "d_aa");
  require_finite(sys.d_bb, "d_bb");
  drive.validate();
  return drive.e_amp * (sys.d_bb - sys.d_aa) / drive.omega;
}

double bessel_ratio(int n, double kappa) {
  if (n < 1) throw std::invalid_argument("bessel_ratio: order must be >= 1");
  if (std::abs(kappa) < kKappaSeriesThreshold) {
    // n (kappa/2)^n / (n! kappa) = (kappa/2)^{n-1} / (2 (n-1)!)
    double v = 0.5;
    for (int j = 1; j < n; ++j) v *= 0.5 * kappa / j;
    return v;
  }
  return n * bessel_j(n, kappa) / kappa;
}

double rabi_frequency(const SystemParams& sys, const DriveParams& drive, int m) {
  if (m < 1) throw std::invalid_argument("rabi_frequency: resonance index must be >= 1");
  const double kappa = compute_kappa(sys, drive);
  return 2.0 * drive.e_amp * sys.d_ab * bessel_ratio(m, kappa);
}

DerivedParams derived(const SystemParams& sys, const DriveParams& drive, int m) {
  DerivedParams p;
  p.kappa = compute_kappa(sys, drive);
  p.m = m;
  p.delta = sys.omega0 - m * drive.omega;
  p.omega_r = rabi_frequency(sys, drive, m);
  p.omega_gen = std::hypot(p.omega_r, p.delta);
  return p;
}

double resonance_dominance(const SystemParams& sys, const DriveParams& drive, int n) {
  if (n < 1) throw std::invalid_argument("resonance_dominance: n must be >= 1");
  const double detuning = sys.omega0 - n * drive.omega;
  if (detuning == 0.0) return std::numeric_limits<double>::infinity();
  const double kappa = compute_kappa(sys, drive);
  return std::abs(drive.e_amp * sys.d_ab * bessel_ratio(n, kappa) / detuning);
}

IsolationReport resonance_isolation(const SystemParams& sys, const DriveParams& drive, int m) {
  if (m < 1) throw std::invalid_argument("resonance_isolation: m must be >= 1");
  IsolationReport report;
  report.m = m;
  report.isolated = true;
  for (int n = 1; n <= m + 5; ++n) {
    DominanceEntry e;
    e.n = n;
    e.ratio = resonance_dominance(sys, drive, n);
    e.ok = (n == m) ? e.ratio >= kTargetDominance : e.ratio <= kNeighbourDominance;
    report.isolated = report.isolated && e.ok;
    report.entries.push_back(e);
  }
  return report;
}

ResonantDesign design_resonant_system(double omega0, int m, double kappa, double omega_r, double detuning,
                                      double e_amp) {
  if (m < 1) throw std::invalid_argument("design_resonant_system: m must be >= 1");
  if (!(e_amp > 0.0)) throw std::invalid_argument("design_resonant_system: e_amp must be positive");
  ResonantDesign d;
  d.drive.e_amp = e_amp;
  d.drive.omega = (omega0 - detuning) / m;
  const double split = kappa * d.drive.omega / e_amp;  // d_bb - d_aa
  d.sys.omega0 = omega0;
  d.sys.d_aa = -0.5 * split;
  d.sys.d_bb = 0.5 * split;
  const double ratio = bessel_ratio(m, kappa);
  if (ratio == 0.0) throw std::invalid_argument("design_resonant_system: kappa sits on a Bessel zero");
  d.sys.d_ab = omega_r / (2.0 * e_amp * ratio);
  d.sys.validate();
  d.drive.validate();
  return d;
}

}  // namespace asymtls
