#pragma once

#include <cstddef>

#include "bounce/constants.hpp"
#include "bounce/energy_rep.hpp"

namespace bounce {

struct FisherNumerics {
  double delta_g_rel = 1e-6;        // relative step of the central g-difference
  bool step_halving_check = true;   // re-run at delta/2 and require 1% agreement
  std::size_t grid_n = 0;           // energy samples, 0 = auto
  double grid_halfwidth_sigmas = 10.0;
  std::size_t momentum_pad = 4;     // extra momentum resolution for d/dp
  double norm_tol = 1e-6;           // canary tolerance; loosen for reduced grids
};

// The three estimators and the per-event Cramer-Rao bound from i_z.
struct FisherReport {
  double i_z = 0.0;
  double i_p = 0.0;
  double i_s = 0.0;
  double cr_relative = 0.0;
  double n_events = 1.0;
  double delta_g_rel = 0.0;
  std::size_t grid_n = 0;
};

// I_Z = (2 g0)^2 int (d|Psi(Z,T)|/dg)^2 dZ with the initial state held fixed
// in SI units; d/dg by a central difference re-running the full pipeline at
// g(1 +- delta).  Throws NumericsError when the step-halving check moves the
// result by more than 1%.
double fisher_position(const WavepacketParams& p, const PhysicalConstants& c,
                       const FisherNumerics& num = {});

// I_p = int ((2 g0 d/dg + m g0 T d/dp) |Psi~(p,0)|)^2 dp, same conventions.
double fisher_momentum(const WavepacketParams& p, const PhysicalConstants& c,
                       const FisherNumerics& num = {});

// Closed form I_S = 2 (m g z0)(m sigma_v^2) T^2 / (3 hbar^2).
double fisher_simple(const WavepacketParams& p, const PhysicalConstants& c);

// 1/sqrt(n_events * info); +infinity for info == 0.
double cramer_rao(double info, double n_events);

FisherReport fisher_report(const WavepacketParams& p, const PhysicalConstants& c,
                           const FisherNumerics& num = {}, bool include_ip = true);

}  // namespace bounce
