#include "asymtls/kernels.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <omp.h>

#include "approx.hpp"
#include "doctest.h"

using namespace asymtls;
using asymtls::testing::rel;

namespace {

struct Data {
  std::vector<double> times;
  std::vector<cplx> c_a, c_b;
  std::vector<double> real;
};

Data make_data(std::size_t n) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.times.push_back(0.37 * static_cast<double>(i));
    d.c_a.emplace_back(g(rng), g(rng));
    d.c_b.emplace_back(g(rng), g(rng));
    d.real.push_back(g(rng));
  }
  return d;
}

class Threads {
 public:
  explicit Threads(int n) : saved_(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

}  // namespace

TEST_CASE("kernels: parallel results are bitwise identical to the serial reference") {
  const auto d = make_data(10007);
  const FrameRestoration r{1.0, 0.9, 0.3, -0.2};
  const DipoleMatrix dm{0.2, -0.3, 0.05};
  const std::vector<SpectralLine> lines{{0.01, {0.1, 0.02}}, {0.99, {-0.003, 0.001}}, {-1.01, {0.002, 0.0}}};
  std::vector<double> probes;
  for (int k = 0; k < 64; ++k) probes.push_back(0.05 * k);
  std::vector<double> fields;
  for (int k = 0; k < 301; ++k) fields.push_back(0.01 * k);
  const SystemParams sys{1.0, -0.4, 0.4, 0.01, {}};

  std::vector<cplx> sa(d.times.size()), sb(d.times.size());
  std::vector<double> sd(d.times.size()), sl(d.times.size()), sw(d.times.size());
  std::vector<cplx> sp(probes.size());
  kernels::serial::restore_original_frame(d.times, d.c_a, d.c_b, r, sa, sb);
  kernels::serial::dipole_expectation(d.c_a, d.c_b, dm, sd);
  kernels::serial::evaluate_lines(lines, d.times, sl);
  kernels::serial::apply_window(d.real, WindowKind::hann, sw);
  kernels::serial::dft_probe(d.real, 0.37, probes, sp);
  const auto smap = kernels::serial::rabi_map(sys, 1.0, fields, 3);

  for (int threads : {1, 2, 3, 4}) {
    CAPTURE(threads);
    Threads guard(threads);
    std::vector<cplx> pa(d.times.size()), pb(d.times.size());
    std::vector<double> pd(d.times.size()), pl(d.times.size()), pw(d.times.size());
    std::vector<cplx> pp(probes.size());
    kernels::parallel::restore_original_frame(d.times, d.c_a, d.c_b, r, pa, pb);
    kernels::parallel::dipole_expectation(d.c_a, d.c_b, dm, pd);
    kernels::parallel::evaluate_lines(lines, d.times, pl);
    kernels::parallel::apply_window(d.real, WindowKind::hann, pw);
    kernels::parallel::dft_probe(d.real, 0.37, probes, pp);
    const auto pmap = kernels::parallel::rabi_map(sys, 1.0, fields, 3);
    CHECK(pa == sa);
    CHECK(pb == sb);
    CHECK(pd == sd);
    CHECK(pl == sl);
    CHECK(pw == sw);
    CHECK(pp == sp);
    REQUIRE(pmap.size() == smap.size());
    for (std::size_t i = 0; i < pmap.size(); ++i) {
      CHECK(pmap[i].e_amp == smap[i].e_amp);
      CHECK(pmap[i].kappa == smap[i].kappa);
      CHECK(pmap[i].omega_r == smap[i].omega_r);
    }
  }
}

TEST_CASE("kernels: dipole expectation and line evaluation by direct substitution") {
  const std::vector<cplx> a{{0.6, 0.0}}, b{{0.0, 0.8}};
  std::vector<double> out(1);
  kernels::serial::dipole_expectation(a, b, {0.5, -0.5, 0.2}, out);
  // 0.5 * 0.36 - 0.5 * 0.64 + 2 * 0.2 * Re(0.6 * 0.8i)
  CHECK(out[0] == rel(0.18 - 0.32));
  const std::vector<SpectralLine> lines{{2.0, {0.25, 0.0}}};
  const std::vector<double> t{0.0, 0.5};
  std::vector<double> v(2);
  kernels::serial::evaluate_lines(lines, t, v);
  CHECK(v[0] == rel(0.5));
  CHECK(v[1] == rel(0.5 * std::cos(1.0)));
}

TEST_CASE("kernels: window values") {
  CHECK(window_value(WindowKind::rectangular, 5, 10) == 1.0);
  CHECK(std::abs(window_value(WindowKind::hann, 0, 8)) < 1e-15);
  CHECK(window_value(WindowKind::hann, 4, 8) == rel(1.0));
  CHECK(window_value(WindowKind::hann, 2, 8) == rel(0.5));
}

TEST_CASE("kernels: mismatched spans are rejected") {
  const std::vector<cplx> a(3), b(4);
  std::vector<double> out(3);
  CHECK_THROWS_AS(kernels::serial::dipole_expectation(a, b, {}, out), std::invalid_argument);
  CHECK_THROWS_AS(kernels::parallel::dipole_expectation(a, b, {}, out), std::invalid_argument);
}
