#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bounce/airy.hpp"
#include "bounce/energy_rep.hpp"
#include "bounce/errors.hpp"

using namespace bounce;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Brute-force projection of the Gaussian source onto the Airy basis,
// c(E) = int Psi0(z) psi_E(z) dz by trapezoid over the packet support.
std::complex<double> c0_by_quadrature(const WavepacketParams& p, const PhysicalConstants& c,
                                      double energy) {
  const GqsScales s = gqs_scales(c);
  const double sz = p.sigma_z(c);
  const double lo = p.z0 - 10.0 * sz;
  const double hi = p.z0 + 10.0 * sz;
  const std::size_t n = 6001;
  const double h = (hi - lo) / static_cast<double>(n - 1);
  const double norm = std::pow(2.0 * kPi * sz * sz, -0.25);
  const double inv_sqrt_le = 1.0 / std::sqrt(s.l_gqs * s.e_gqs);
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = lo + h * static_cast<double>(i);
    const double gauss = std::exp(-(z - p.z0) * (z - p.z0) / (4.0 * sz * sz));
    // momentum phase referenced at z0, matching the closed form's convention
    const double phase = c.m * p.v0 * (z - p.z0) / c.hbar;
    const std::complex<double> psi0 =
        norm * gauss * std::complex<double>(std::cos(phase), std::sin(phase));
    const double basis = airy::ai_real((z - energy / (c.m * c.g)) / s.l_gqs) * inv_sqrt_le;
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * psi0 * basis;
  }
  return acc * h;
}

}  // namespace

TEST_CASE("default grid brackets the classical mean energy and normalizes c0") {
  PhysicalConstants c;
  WavepacketParams p;  // reference parameters (the defaults)
  const EnergyGrid grid = default_energy_grid(p, c);
  const double e_mean = c.m * c.g * p.z0 + 0.5 * c.m * p.v0 * p.v0;
  CHECK(grid.e_min < e_mean);
  CHECK(grid.e_max > e_mean);

  const EnergyAmplitude c0 = initial_amplitude(p, c, grid);
  CHECK(std::abs(c0.norm() - 1.0) < 1e-6);
}

TEST_CASE("doubling n leaves the norm unchanged to 1e-9") {
  PhysicalConstants c;
  WavepacketParams p;
  const EnergyGrid g1 = default_energy_grid(p, c);
  EnergyGrid g2 = g1;
  g2.n = 2 * g1.n;
  const double n1 = initial_amplitude(p, c, g1).norm();
  const double n2 = initial_amplitude(p, c, g2).norm();
  CHECK(std::abs(n1 - n2) < 1e-9);
}

TEST_CASE("narrow grid trips the norm canary") {
  PhysicalConstants c;
  WavepacketParams p;
  const EnergyGrid narrow = default_energy_grid(p, c, 0, 2.0);
  CHECK_THROWS_AS(initial_amplitude(p, c, narrow), NumericsError);
}

TEST_CASE("|c0|^2 peaks near the classical mean energy") {
  PhysicalConstants c;
  WavepacketParams p;
  const EnergyGrid grid = default_energy_grid(p, c);
  const EnergyAmplitude c0 = initial_amplitude(p, c, grid);
  double best = 0.0;
  std::size_t ibest = 0;
  for (std::size_t i = 0; i < c0.values.size(); ++i) {
    if (std::norm(c0.values[i]) > best) {
      best = std::norm(c0.values[i]);
      ibest = i;
    }
  }
  const double e_mean = c.m * c.g * p.z0 + 0.5 * c.m * p.v0 * p.v0;
  const double sigma_e =
      c.m * (std::abs(p.v0) + p.sigma_v) * p.sigma_v + c.m * c.g * p.sigma_z(c);
  CHECK(std::abs(grid.energy(ibest) - e_mean) < 2.0 * sigma_e);
}

TEST_CASE("closed-form c0 equals the direct projection integral") {
  PhysicalConstants c;
  WavepacketParams p;
  const EnergyGrid grid = default_energy_grid(p, c);
  const EnergyAmplitude c0 = initial_amplitude(p, c, grid);

  // 32 energies spread over the bulk of the distribution
  double peak = 0.0;
  for (const auto& v : c0.values) peak = std::max(peak, std::abs(v));
  std::size_t checked = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < 32; ++k) {
    const std::size_t i = c0.values.size() * (k + 1) / 40;
    if (std::abs(c0.values[i]) < 1e-2 * peak) continue;
    const std::complex<double> ref = c0_by_quadrature(p, c, grid.energy(i));
    worst = std::max(worst, std::abs(c0.values[i] - ref) / std::abs(ref));
    ++checked;
  }
  CHECK(checked >= 10);
  CHECK(worst < 1e-6);
}

TEST_CASE("reflection amplitude has unit modulus and the right zero-energy phase") {
  PhysicalConstants c;
  const GqsScales s = gqs_scales(c);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-15.0, 2500.0);
  for (int i = 0; i < 200; ++i) {
    const std::complex<double> rho = reflection_amplitude(u(rng) * s.e_gqs, c);
    CHECK(std::abs(std::abs(rho) - 1.0) < 1e-12);
  }
  const std::complex<double> rho0 = reflection_amplitude(0.0, c);
  CHECK(rho0.real() == doctest::Approx(std::cos(kPi / 3.0)).epsilon(1e-12));
  CHECK(rho0.imag() == doctest::Approx(std::sin(kPi / 3.0)).epsilon(1e-12));
}

TEST_CASE("reflection amplitude phase agrees with the continuous phase mod 2pi") {
  PhysicalConstants c;
  const GqsScales s = gqs_scales(c);
  for (double eps : {0.5, 3.0, 10.0, 25.0, 120.0, 900.0}) {
    const std::complex<double> rho = reflection_amplitude(eps * s.e_gqs, c);
    const double phase = airy::reflection_phase(eps);
    const std::complex<double> expect(std::cos(phase), std::sin(phase));
    CHECK(std::abs(rho - expect) < 1e-9);
  }
}

TEST_CASE("bounce is unitary, phase-only and multiplicative") {
  PhysicalConstants c;
  WavepacketParams p;
  const EnergyGrid grid = default_energy_grid(p, c);
  const EnergyAmplitude c0 = initial_amplitude(p, c, grid);
  const EnergyAmplitude c1 = apply_bounce(c0, c);

  CHECK(c1.tag == AmplitudeTag::reflected);
  CHECK(std::abs(c1.norm() - c0.norm()) <= 1e-12 * c0.norm());

  double worst = 0.0;
  for (std::size_t i = 0; i < c0.values.size(); ++i) {
    const double a0 = std::abs(c0.values[i]);
    const double a1 = std::abs(c1.values[i]);
    worst = std::max(worst, std::abs(a1 - a0) / std::max(a0, 1e-30));
  }
  CHECK(worst < 1e-12);

  // double bounce multiplies by rho^2: phases add
  EnergyAmplitude relabeled = c1;
  relabeled.tag = AmplitudeTag::initial;
  const EnergyAmplitude c2 = apply_bounce(relabeled, c);
  const std::size_t mid = c0.values.size() / 2;
  const std::complex<double> rho = reflection_amplitude(grid.energy(mid), c);
  CHECK(std::abs(c2.values[mid] - rho * rho * c0.values[mid]) <=
        1e-11 * std::abs(c0.values[mid]));

  CHECK_THROWS_AS(apply_bounce(c1, c), UsageError);
}

TEST_CASE("wavepacket validation") {
  PhysicalConstants c;
  WavepacketParams p;
  p.z0 = -1.0;
  CHECK_THROWS_AS(p.validate(c), ConfigError);

  WavepacketParams low;
  low.z0 = 1e-6;  // below 5 sigma_z = 2 microns
  CHECK_THROWS_AS(low.validate(c), ConfigError);

  WavepacketParams ok;
  CHECK_NOTHROW(ok.validate(c));
  CHECK(ok.sigma_z(c) == doctest::Approx(0.4e-6).epsilon(5e-3));
}

TEST_CASE("energy grid validation") {
  EnergyGrid g;
  g.e_min = 0.0;
  g.e_max = 1.0;
  g.n = 1000;  // not a power of two
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g.n = 512;  // too small
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g.n = 4096;
  CHECK_NOTHROW(g.validate());
}
