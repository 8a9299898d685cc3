#include "asymtls/rwa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "asymtls/bessel.hpp"

namespace asymtls {

namespace {

bool is_excited(const InitialState& s) { return std::abs(s.c_a0 - cplx{1.0, 0.0}) == 0.0 && std::abs(s.c_b0) == 0.0; }

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

RwaSolution RwaSolution::make(const SystemParams& sys, const DriveParams& drive, int m, const InitialState& init) {
  sys.validate();
  drive.validate();
  init.validate();
  return {sys, drive, asymtls::derived(sys, drive, m), init};
}

Amplitudes rwa_amplitudes(const RwaSolution& sol, double t) {
  const auto& p = sol.derived;
  const double omega = sol.drive.omega;
  const double phi_a = sol.drive.e_amp * sol.sys.d_aa * std::sin(omega * t) / omega;
  const double phi_b = sol.drive.e_amp * sol.sys.d_bb * std::sin(omega * t) / omega;
  const cplx frame_a = expi(-0.5 * p.m * omega * t + phi_a);
  const cplx frame_b = expi(0.5 * p.m * omega * t + phi_b);
  if (p.omega_gen == 0.0) return {sol.init.c_a0 * frame_a, sol.init.c_b0 * frame_b};

  const double c = std::cos(0.5 * p.omega_gen * t);
  const double s = std::sin(0.5 * p.omega_gen * t);
  const double detune = p.delta / p.omega_gen;
  const double coupling = p.omega_r / p.omega_gen;
  const cplx i{0.0, 1.0};
  const cplx a = sol.init.c_a0 * (c - i * detune * s) + i * coupling * sol.init.c_b0 * s;
  const cplx b = sol.init.c_b0 * (c + i * detune * s) + i * coupling * sol.init.c_a0 * s;
  return {a * frame_a, b * frame_b};
}

std::vector<SpectralLine> dipole_rwa_lines(const RwaSolution& sol, int n_range) {
  const int m = sol.m();
  if (!is_excited(sol.init)) {
    throw std::invalid_argument("dipole_rwa: the closed-form dipole assumes C_a(0) = 1, C_b(0) = 0");
  }
  if (n_range < m + 3) throw std::invalid_argument("dipole_rwa: n_range must be >= m + 3");

  const auto& p = sol.derived;
  std::vector<SpectralLine> lines;
  if (p.omega_gen == 0.0) return lines;  // Omega_R = 0: no oscillating terms

  const double big_omega = p.omega_gen;
  const double ratio = p.omega_r / big_omega;
  const double detune = p.delta / big_omega;
  const double omega = sol.drive.omega;
  const auto bessel = bessel_row(m + n_range, p.kappa);

  auto push = [&](double freq, cplx coef) {
    if (freq != 0.0 && coef != cplx{}) lines.push_back({freq, coef});
  };

  push(big_omega, (sol.sys.d_aa - sol.sys.d_bb) * ratio * ratio / 4.0);
  for (int n = -n_range; n <= n_range; ++n) {
    const double weight = -sol.sys.d_ab * 0.5 * ratio * bessel.at(m - n);
    if (n != 0) push(n * omega, weight * detune);
    push(n * omega - big_omega, weight * 0.5 * (1.0 - detune));
    push(n * omega + big_omega, -weight * 0.5 * (1.0 + detune));
  }
  return lines;
}

double dipole_rwa(const RwaSolution& sol, double t, int n_range) {
  const auto lines = dipole_rwa_lines(sol, n_range);
  double out = 0.0;
  const double times[1] = {t};
  kernels::serial::evaluate_lines(lines, times, std::span<double>(&out, 1));
  return out;
}

std::vector<double> dipole_rwa_series(const RwaSolution& sol, std::span<const double> times, int n_range) {
  const auto lines = dipole_rwa_lines(sol, n_range);
  std::vector<double> out(times.size());
  kernels::parallel::evaluate_lines(lines, times, out);
  return out;
}

std::vector<LineAmplitude> merge_lines(std::span<const SpectralLine> lines, double tolerance) {
  struct Acc {
    double omega;
    cplx sum;
  };
  std::vector<Acc> acc;
  for (const auto& l : lines) {
    const double f = std::abs(l.omega);
    const cplx c = l.omega >= 0.0 ? l.coef : std::conj(l.coef);
    auto it = std::find_if(acc.begin(), acc.end(),
                           [&](const Acc& a) { return std::abs(a.omega - f) <= tolerance * std::max(1.0, f); });
    if (it == acc.end()) {
      acc.push_back({f, c});
    } else {
      it->sum += c;
    }
  }
  std::sort(acc.begin(), acc.end(), [](const Acc& a, const Acc& b) { return a.omega < b.omega; });
  std::vector<LineAmplitude> out;
  out.reserve(acc.size());
  for (const auto& a : acc) out.push_back({a.omega, 2.0 * std::abs(a.sum)});
  return out;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::warn:
      return "warn";
    case CheckStatus::not_evaluated:
      return "not evaluated";
  }
  return "?";
}

bool ValidityReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidityCheck& c) { return c.status != CheckStatus::warn; });
}

ValidityReport rwa_validity(const SystemParams& sys, const DriveParams& drive, int m) {
  ValidityReport r;
  r.m = m;
  r.derived = derived(sys, drive, m);
  const double omega_r = std::abs(r.derived.omega_r);

  ValidityCheck strong{"strong_coupling", 0.0, kStrongCouplingThreshold, CheckStatus::not_evaluated,
                       "Omega_R * tau >> 1"};
  if (sys.tau) {
    strong.value = omega_r * *sys.tau;
    strong.status = strong.value >= kStrongCouplingThreshold ? CheckStatus::pass : CheckStatus::warn;
  } else {
    strong.note = "lifetime not given";
  }
  r.checks.push_back(strong);

  ValidityCheck hierarchy{"rwa_hierarchy", omega_r / drive.omega, kRwaHierarchyThreshold, CheckStatus::pass,
                          "Omega_R / omega << 1"};
  if (hierarchy.value > kRwaHierarchyThreshold) hierarchy.status = CheckStatus::warn;
  r.checks.push_back(hierarchy);

  // Competing harmonics: how the target Rabi frequency compares with the
  // strongest neighbouring one. Near a zero of J_m the target is suppressed.
  double strongest_other = 0.0;
  int strongest_n = 0;
  for (int n = 1; n <= m + 5; ++n) {
    if (n == m) continue;
    const double other = std::abs(rabi_frequency(sys, drive, n));
    if (other > strongest_other) {
      strongest_other = other;
      strongest_n = n;
    }
  }
  ValidityCheck suppression{"resonance_strength", strongest_other > 0.0 ? omega_r / strongest_other : INFINITY, 1.0,
                            CheckStatus::pass, ""};
  if (suppression.value < 1.0) {
    suppression.status = CheckStatus::warn;
    suppression.note = "Rabi frequency of resonance m is suppressed below that of harmonic n = " +
                       std::to_string(strongest_n);
  }
  r.checks.push_back(suppression);

  r.isolation = resonance_isolation(sys, drive, m);
  for (const auto& e : r.isolation.entries) {
    ValidityCheck c{"dominance_n" + std::to_string(e.n), e.ratio, e.n == m ? kTargetDominance : kNeighbourDominance,
                    e.ok ? CheckStatus::pass : CheckStatus::warn,
                    e.n == m ? "target ratio >= threshold (advisory)" : "neighbour ratio <= threshold (advisory)"};
    r.checks.push_back(c);
  }
  return r;
}

}  // namespace asymtls
