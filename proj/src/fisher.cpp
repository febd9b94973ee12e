#include "bounce/fisher.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bounce/errors.hpp"
#include "bounce/propagation.hpp"

namespace bounce {

namespace {

// One full pipeline evaluation at acceleration g' = scale * c.g.  The energy
// grid is the central grid stretched by the same factor, which keeps dz, dp
// and every output sample coordinate identical across the g-perturbed runs
// (dz = dE/(m g) and dp = 2 pi hbar m g / (n dE) are both invariant).
struct Pipeline {
  EnergyGrid grid;
  std::size_t pad = 1;
  double norm_tol = 1e-6;

  GriddedWavefunction momentum(const WavepacketParams& p, const PhysicalConstants& c,
                               double scale) const {
    PhysicalConstants cs = c;
    cs.g = c.g * scale;
    EnergyGrid gs = grid;
    gs.e_min = grid.e_min * scale;
    gs.e_max = grid.e_max * scale;
    const EnergyAmplitude c0 = initial_amplitude(p, cs, gs, norm_tol);
    const EnergyAmplitude c1 = apply_bounce(c0, cs);
    return image_momentum(c1, cs, pad, MomentumWindow::nonnegative, 10.0 * norm_tol);
  }

  GriddedWavefunction pattern(const WavepacketParams& p, const PhysicalConstants& c,
                              double scale, const ZWindow& window) const {
    PhysicalConstants cs = c;
    cs.g = c.g * scale;
    return propagate_to_detector(momentum(p, c, scale), p.T, cs, window);
  }
};

Pipeline make_pipeline(const WavepacketParams& p, const PhysicalConstants& c,
                       const FisherNumerics& num, bool for_position) {
  Pipeline pipe;
  pipe.grid = default_energy_grid(p, c, num.grid_n, num.grid_halfwidth_sigmas);
  pipe.norm_tol = num.norm_tol;
  if (for_position) {
    const EnergyAmplitude c0 = initial_amplitude(p, c, pipe.grid, num.norm_tol);
    const EnergyAmplitude c1 = apply_bounce(c0, c);
    pipe.pad = recommended_pad(c1, c, p.T);
  } else {
    pipe.pad = num.momentum_pad;
  }
  return pipe;
}

double position_info_at_step(const Pipeline& pipe, const WavepacketParams& p,
                             const PhysicalConstants& c, const ZWindow& window,
                             double delta) {
  const GriddedWavefunction up = pipe.pattern(p, c, 1.0 + delta, window);
  const GriddedWavefunction dn = pipe.pattern(p, c, 1.0 - delta, window);
  // both grids start at window.lo with spacings equal to the last ulp; the
  // lengths can differ by one sample from rounding in the slice bound
  if (std::abs(up.dx - dn.dx) > 4.0 * std::numeric_limits<double>::epsilon() * up.dx ||
      up.x0 != dn.x0)
    throw NumericsError("fisher_position: perturbed grids misaligned");
  const std::size_t n = std::min(up.n(), dn.n());
  const double dg = delta * c.g;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (std::abs(up.values[i]) - std::abs(dn.values[i])) / (2.0 * dg);
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * d * d;
  }
  return 4.0 * c.g0 * c.g0 * acc * up.dx;
}

double momentum_info_at_step(const Pipeline& pipe, const WavepacketParams& p,
                             const PhysicalConstants& c, double delta) {
  const GriddedWavefunction mid = pipe.momentum(p, c, 1.0);
  const GriddedWavefunction up = pipe.momentum(p, c, 1.0 + delta);
  const GriddedWavefunction dn = pipe.momentum(p, c, 1.0 - delta);
  if (up.n() != dn.n() || up.n() != mid.n())
    throw NumericsError("fisher_momentum: perturbed grids misaligned");
  const double dg = delta * c.g;
  const double dp = mid.dx;
  double acc = 0.0;
  // five-point d/dp: the finest information-carrying fringes sit only an
  // order of magnitude above the grid spacing, where the three-point stencil
  // already loses several percent
  for (std::size_t i = 2; i + 2 < mid.n(); ++i) {
    const double d_g = (std::abs(up.values[i]) - std::abs(dn.values[i])) / (2.0 * dg);
    const double d_p = (8.0 * (std::abs(mid.values[i + 1]) - std::abs(mid.values[i - 1])) -
                        (std::abs(mid.values[i + 2]) - std::abs(mid.values[i - 2]))) /
                       (12.0 * dp);
    const double term = 2.0 * c.g0 * d_g + c.m * c.g0 * p.T * d_p;
    acc += term * term;
  }
  return acc * dp;
}

void check_halving(double full, double half, const char* who) {
  if (!(std::abs(full - half) <= 0.01 * std::abs(half)))
    throw NumericsError(std::string(who) + ": step-halving moved the result from " +
                        std::to_string(half) + " to " + std::to_string(full) +
                        " (> 1%); finite difference unreliable");
}

}  // namespace

double fisher_position(const WavepacketParams& p, const PhysicalConstants& c,
                       const FisherNumerics& num) {
  p.validate(c);
  const Pipeline pipe = make_pipeline(p, c, num, true);
  const GriddedWavefunction psi_p = pipe.momentum(p, c, 1.0);
  const ZWindow window = arrival_window(psi_p, p.T, c, 1e-6);
  const double full = position_info_at_step(pipe, p, c, window, num.delta_g_rel);
  if (num.step_halving_check) {
    const double half = position_info_at_step(pipe, p, c, window, 0.5 * num.delta_g_rel);
    check_halving(full, half, "fisher_position");
  }
  return full;
}

double fisher_momentum(const WavepacketParams& p, const PhysicalConstants& c,
                       const FisherNumerics& num) {
  p.validate(c);
  const Pipeline pipe = make_pipeline(p, c, num, false);
  const double full = momentum_info_at_step(pipe, p, c, num.delta_g_rel);
  if (num.step_halving_check) {
    const double half = momentum_info_at_step(pipe, p, c, 0.5 * num.delta_g_rel);
    check_halving(full, half, "fisher_momentum");
  }
  return full;
}

double fisher_simple(const WavepacketParams& p, const PhysicalConstants& c) {
  p.validate(c);
  return 2.0 * (c.m * c.g * p.z0) * (c.m * p.sigma_v * p.sigma_v) * p.T * p.T /
         (3.0 * c.hbar * c.hbar);
}

double cramer_rao(double info, double n_events) {
  if (!(n_events >= 1.0)) throw UsageError("cramer_rao: n_events must be >= 1");
  if (info < 0.0 || !std::isfinite(info))
    throw std::domain_error("cramer_rao: information must be finite and >= 0");
  if (info == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(n_events * info);
}

FisherReport fisher_report(const WavepacketParams& p, const PhysicalConstants& c,
                           const FisherNumerics& num, bool include_ip) {
  FisherReport r;
  r.i_s = fisher_simple(p, c);
  r.i_z = fisher_position(p, c, num);
  r.i_p = include_ip ? fisher_momentum(p, c, num) : 0.0;
  r.cr_relative = cramer_rao(r.i_z, p.n_events);
  r.n_events = p.n_events;
  r.delta_g_rel = num.delta_g_rel;
  r.grid_n = num.grid_n != 0 ? num.grid_n : default_energy_grid(p, c, 0, num.grid_halfwidth_sigmas).n;
  return r;
}

}  // namespace bounce
