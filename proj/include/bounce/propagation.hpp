#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "bounce/constants.hpp"
#include "bounce/energy_rep.hpp"

namespace bounce {

enum class Axis { position, momentum };

// Complex wavefunction sampled on a uniform position or momentum grid.
struct GriddedWavefunction {
  Axis axis = Axis::position;
  double x0 = 0.0;    // coordinate of the first sample (m or kg m/s)
  double dx = 0.0;    // uniform spacing
  double time = 0.0;  // s
  std::vector<std::complex<double>> values;

  std::size_t n() const { return values.size(); }
  double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  double x_min() const { return x0; }
  double x_max() const { return x(n() - 1); }
  double norm() const;  // trapezoid of |psi|^2 dx
  std::vector<double> density() const;
};

// Reference path: trapezoid quadrature of the energy superposition,
// Psi(z,t) = int c(E) Ai((z - E/mg)/l) / sqrt(l e) exp(-iEt/hbar) dE.
// If norm_tol > 0 the result's norm is checked against 1 (grid canary).
GriddedWavefunction position_wave_direct(const EnergyAmplitude& c, double t, double z_min,
                                         double z_max, std::size_t n_z,
                                         const PhysicalConstants& consts, double norm_tol = 0.0);

// Direct quadrature of the momentum superposition at arbitrary p values
// (reference path for the FFT pipeline below).
std::vector<std::complex<double>> momentum_wave_direct(const EnergyAmplitude& c,
                                                       const std::vector<double>& p,
                                                       const PhysicalConstants& consts);

enum class MomentumWindow { nonnegative, centered };

// FFT of the amplitude over energy, giving the momentum wavefunction at t=0:
//   Psi~(p,0) = exp(i p^3/(6 hbar m^2 g)) / sqrt(2 pi hbar m g) * c^(p/(hbar m g)).
// pad_factor (power of two) zero-pads the energy array, refining the momentum
// spacing; the window choice selects which alias branch the grid represents.
GriddedWavefunction momentum_representation(const EnergyAmplitude& c,
                                            const PhysicalConstants& consts,
                                            std::size_t pad_factor = 1,
                                            MomentumWindow window = MomentumWindow::nonnegative,
                                            double norm_tol = 1e-5);

// Same with the reflected-tag precondition of the image wave.
GriddedWavefunction image_momentum(const EnergyAmplitude& c1, const PhysicalConstants& consts,
                                   std::size_t pad_factor = 1,
                                   MomentumWindow window = MomentumWindow::nonnegative,
                                   double norm_tol = 1e-5);

struct ZWindow {
  double lo;
  double hi;
};

// Ballistic arrival range of the measured momentum support at time T,
// padded by the packet's own spatial extent.  Useful as the window argument
// below when the whole pattern is wanted.
ZWindow arrival_window(const GriddedWavefunction& psi_p, double T,
                       const PhysicalConstants& consts, double rel_amp = 1e-7);

// Momentum-space free-fall evolution followed by the Fourier transform back
// to position:
//   Psi~(p,T) = exp(-i((p+mgT)^3 - p^3)/(6 hbar m^2 g)) Psi~(p+mgT, 0).
// Returns the wavefunction restricted to `window` (or to the ballistic
// arrival range of the measured momentum support when absent).  Throws
// NumericsError when the momentum spacing cannot hold the arrival span plus
// the requested window inside one FFT period (evolution phase would alias).
// When `window` is given its lower edge anchors the output grid exactly, so
// runs that share (window, dp, n) land on identical position samples.
GriddedWavefunction propagate_to_detector(const GriddedWavefunction& psi_p, double T,
                                          const PhysicalConstants& consts,
                                          std::optional<ZWindow> window = std::nullopt);

// One-to-one far-field map from detector position to image momentum,
// p_Z = (m/T)(Z + g T^2/2 - z_c) with z_c = -5 z0/3.
double farfield_map(double Z, double T, double z0, const PhysicalConstants& consts);

// |Psi(Z,T)|^2 ~ (m/T) |Psi~(p_Z, 0)|^2 on the given detector positions.
std::vector<double> farfield_pattern(const GriddedWavefunction& psi_p, double T, double z0,
                                     const std::vector<double>& z_grid,
                                     const PhysicalConstants& consts);

// First/last sample whose amplitude reaches rel_amp * max, as coordinates.
struct SupportRange {
  double lo;
  double hi;
};
SupportRange measure_support(const GriddedWavefunction& psi, double rel_amp = 1e-7);

// Smallest power-of-two pad factor that lets propagate_to_detector at time T
// hold the arrival span plus extra_window metres without wrap-around.
std::size_t recommended_pad(const EnergyAmplitude& c1, const PhysicalConstants& consts, double T,
                            double extra_window = 0.0);

}  // namespace bounce
