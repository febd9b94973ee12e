#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "bounce/constants.hpp"

namespace bounce {

// Experiment configuration.  sigma_z is not stored: the source state is the
// minimum-uncertainty Gaussian, so sigma_z = hbar / (2 m sigma_v).
struct WavepacketParams {
  double z0 = 1.0e-3;       // mean altitude above the mirror, m
  double v0 = -91.5e-3;     // mean vertical velocity, m/s (negative = down)
  double sigma_v = 79.0e-3; // velocity dispersion, m/s
  double T = 0.3;           // time of flight to the detector, s
  double n_events = 1.0;    // detected-event count

  double sigma_z(const PhysicalConstants& c) const { return c.hbar / (2.0 * c.m * sigma_v); }
  void validate(const PhysicalConstants& c) const;  // throws ConfigError
};

// Uniform energy grid, FFT-ready (n a power of two, >= 2^10).
struct EnergyGrid {
  double e_min = 0.0;  // J
  double e_max = 0.0;  // J
  std::size_t n = 0;

  double de() const { return (e_max - e_min) / static_cast<double>(n - 1); }
  double energy(std::size_t i) const { return e_min + de() * static_cast<double>(i); }
  void validate() const;  // throws ConfigError
};

enum class AmplitudeTag { initial, reflected };

// Complex amplitude c(E) sampled on a uniform energy grid.
struct EnergyAmplitude {
  EnergyGrid grid;
  std::vector<std::complex<double>> values;
  AmplitudeTag tag = AmplitudeTag::initial;

  // trapezoid of |c|^2 dE
  double norm() const;
};

// Grid rule: centered on the classical mean energy m g z0 + m v0^2/2 with
// half-width `halfwidth_sigmas` * sigma_E, clipped below at -20 e_gqs.
// n = 0 picks the smallest power of two (>= 2^14) whose energy spacing keeps
// the reflected amplitude's full momentum content inside one FFT window.
EnergyGrid default_energy_grid(const WavepacketParams& p, const PhysicalConstants& c,
                               std::size_t n = 0, double halfwidth_sigmas = 10.0);

// Closed-form initial amplitude of the minimum-uncertainty Gaussian packet.
// Checks the trapezoid norm against 1 (tolerance 1e-6) and throws
// NumericsError when the grid truncates the packet.
EnergyAmplitude initial_amplitude(const WavepacketParams& p, const PhysicalConstants& c,
                                  const EnergyGrid& grid, double norm_tol = 1e-6);

// Hard-mirror reflection amplitude rho(E) = -(Ai - iBi)/(Ai + iBi) at -E/e_gqs.
std::complex<double> reflection_amplitude(double energy, const PhysicalConstants& c);

// c1 = rho * c0.  Requires tag == initial.
EnergyAmplitude apply_bounce(const EnergyAmplitude& c0, const PhysicalConstants& c);

}  // namespace bounce
