#include "bounce/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bounce/airy.hpp"
#include "bounce/errors.hpp"
#include "bounce/fft.hpp"

namespace bounce {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Spatial slack added around the ballistic arrival range: covers the image
// wave's own extent at t = 0 (a few z0 around z_c) with generous margin.
constexpr double kArrivalMargin = 0.04;  // m

double trapezoid_norm(const std::vector<std::complex<double>>& v, double dx) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double w = (i == 0 || i + 1 == v.size()) ? 0.5 : 1.0;
    acc += w * std::norm(v[i]);
  }
  return acc * dx;
}

}  // namespace

double GriddedWavefunction::norm() const {
  return trapezoid_norm(values, dx);
}

std::vector<double> GriddedWavefunction::density() const {
  std::vector<double> d(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) d[i] = std::norm(values[i]);
  return d;
}

namespace {

// The direct quadratures are reference evaluations: the kernel phases the
// caller introduces (basis oscillation at the target position, time factor,
// momentum kernel) must stay below the Nyquist rate of the energy grid,
// otherwise aliased branches of the rotating phase can go stationary inside
// the packet and inject order-one junk.  The amplitude's own sampling is the
// constructor's responsibility (norm canary + grid rule).
void require_nyquist(const EnergyAmplitude& c, const GqsScales& s, double kernel_rate,
                     const char* who) {
  const double deps = c.grid.de() / s.e_gqs;
  if (kernel_rate * deps > 0.995 * kPi) {
    const std::size_t need = static_cast<std::size_t>(
        std::ceil((c.grid.e_max - c.grid.e_min) / s.e_gqs * kernel_rate / (0.9 * kPi)));
    throw NumericsError(std::string(who) +
                        ": energy grid too coarse for direct quadrature; need n >= " +
                        std::to_string(need));
  }
}

}  // namespace

GriddedWavefunction position_wave_direct(const EnergyAmplitude& c, double t, double z_min,
                                         double z_max, std::size_t n_z,
                                         const PhysicalConstants& consts, double norm_tol) {
  if (!(z_min < z_max) || n_z < 2) throw UsageError("position_wave_direct: bad z grid");
  const GqsScales s = gqs_scales(consts);
  {
    const double eps_max = c.grid.e_max / s.e_gqs;
    const double zeta_min = z_min / s.l_gqs;
    const double basis_rate = std::sqrt(std::max(0.0, eps_max - zeta_min));
    const double time_rate = std::abs(t) * s.e_gqs / consts.hbar;
    require_nyquist(c, s, basis_rate + time_rate, "position_wave_direct");
  }
  const double de = c.grid.de();
  const double inv_sqrt_le = 1.0 / std::sqrt(s.l_gqs * s.e_gqs);
  const std::size_t ne = c.grid.n;

  GriddedWavefunction out;
  out.axis = Axis::position;
  out.time = t;
  out.x0 = z_min;
  out.dx = (z_max - z_min) / static_cast<double>(n_z - 1);
  out.values.assign(n_z, {0.0, 0.0});

  // phase(E_j) = -E_j t / hbar, split so the per-sample increment stays exact
  const double phi0 = -c.grid.e_min * t / consts.hbar;
  const double dphi = -de * t / consts.hbar;
  std::vector<std::complex<double>> time_phase(ne);
  for (std::size_t j = 0; j < ne; ++j) {
    const double w = (j == 0 || j + 1 == ne) ? 0.5 : 1.0;
    const double phi = phi0 + dphi * static_cast<double>(j);
    time_phase[j] = w * de * std::complex<double>(std::cos(phi), std::sin(phi)) * c.values[j];
  }

  for (std::size_t i = 0; i < n_z; ++i) {
    const double zeta = out.x(i) / s.l_gqs;
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t j = 0; j < ne; ++j) {
      const double eps = c.grid.energy(j) / s.e_gqs;
      acc += time_phase[j] * airy::ai_real(zeta - eps);
    }
    out.values[i] = acc * inv_sqrt_le;
  }

  if (norm_tol > 0.0) {
    const double nrm = out.norm();
    if (std::abs(nrm - 1.0) > norm_tol)
      throw NumericsError("position_wave_direct: window norm " + std::to_string(nrm) +
                          " fails the grid canary");
  }
  return out;
}

std::vector<std::complex<double>> momentum_wave_direct(const EnergyAmplitude& c,
                                                       const std::vector<double>& p,
                                                       const PhysicalConstants& consts) {
  const double hmg = consts.hbar * consts.m * consts.g;
  {
    const GqsScales s = gqs_scales(consts);
    double p_abs = 0.0;
    for (double pk : p) p_abs = std::max(p_abs, std::abs(pk));
    require_nyquist(c, s, p_abs * s.e_gqs / hmg, "momentum_wave_direct");
  }
  const double pref = 1.0 / std::sqrt(2.0 * kPi * hmg);
  const double de = c.grid.de();
  std::vector<std::complex<double>> out(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double kappa = p[k] / hmg;
    // psi~_E(p) = pref * exp(-i kappa (E - p^2/(6m)))
    const double cubic = kappa * p[k] * p[k] / (6.0 * consts.m);
    std::complex<double> acc(0.0, 0.0);
    const double phi0 = -kappa * c.grid.e_min;
    const double dphi = -kappa * de;
    for (std::size_t j = 0; j < c.grid.n; ++j) {
      const double w = (j == 0 || j + 1 == c.grid.n) ? 0.5 : 1.0;
      const double phi = phi0 + dphi * static_cast<double>(j);
      acc += w * c.values[j] * std::complex<double>(std::cos(phi), std::sin(phi));
    }
    acc *= de * pref;
    out[k] = acc * std::complex<double>(std::cos(cubic), std::sin(cubic));
  }
  return out;
}

GriddedWavefunction momentum_representation(const EnergyAmplitude& c,
                                            const PhysicalConstants& consts,
                                            std::size_t pad_factor, MomentumWindow window,
                                            double norm_tol) {
  c.grid.validate();
  if (pad_factor == 0 || !detail::is_pow2(pad_factor))
    throw UsageError("momentum_representation: pad_factor must be a power of two");
  if (!detail::is_pow2(c.grid.n))
    throw UsageError("momentum_representation: energy grid length must be a power of two");

  const std::size_t n = c.grid.n * pad_factor;
  const double de = c.grid.de();
  const double hmg = consts.hbar * consts.m * consts.g;
  const double dkappa = 2.0 * kPi / (de * static_cast<double>(n));
  const double dp = hmg * dkappa;
  const double pref = de / std::sqrt(2.0 * kPi * hmg);
  const double cubic_scale = 1.0 / (6.0 * consts.hbar * consts.m * consts.m * consts.g);

  std::vector<std::complex<double>> a(n, {0.0, 0.0});
  std::copy(c.values.begin(), c.values.end(), a.begin());
  // trapezoid end weights keep the FFT path on the same quadrature rule as
  // the direct reference path
  a[0] *= 0.5;
  a[c.grid.n - 1] *= 0.5;
  detail::fft_pow2(a, -1);

  GriddedWavefunction out;
  out.axis = Axis::momentum;
  out.time = 0.0;
  out.dx = dp;
  out.values.resize(n);
  const std::ptrdiff_t shift = window == MomentumWindow::centered
                                   ? static_cast<std::ptrdiff_t>(n / 2)
                                   : 0;
  out.x0 = -static_cast<double>(shift) * dp;
  for (std::size_t k = 0; k < n; ++k) {
    const std::ptrdiff_t ks = static_cast<std::ptrdiff_t>(k) - shift;  // signed frequency index
    const std::size_t raw = static_cast<std::size_t>((ks + static_cast<std::ptrdiff_t>(n)) %
                                                     static_cast<std::ptrdiff_t>(n));
    const double p = dp * static_cast<double>(ks);
    const double kappa = dkappa * static_cast<double>(ks);
    const double phi = -kappa * c.grid.e_min + cubic_scale * p * p * p;
    out.values[k] = pref * a[raw] * std::complex<double>(std::cos(phi), std::sin(phi));
  }

  if (norm_tol > 0.0) {
    const double nrm = out.norm();
    if (std::abs(nrm - 1.0) > norm_tol)
      throw NumericsError("momentum_representation: norm " + std::to_string(nrm) +
                          " fails the canary");
  }
  return out;
}

GriddedWavefunction image_momentum(const EnergyAmplitude& c1, const PhysicalConstants& consts,
                                   std::size_t pad_factor, MomentumWindow window,
                                   double norm_tol) {
  if (c1.tag != AmplitudeTag::reflected)
    throw UsageError("image_momentum: amplitude must carry the reflected tag");
  return momentum_representation(c1, consts, pad_factor, window, norm_tol);
}

SupportRange measure_support(const GriddedWavefunction& psi, double rel_amp) {
  double peak = 0.0;
  for (const auto& v : psi.values) peak = std::max(peak, std::abs(v));
  const double thr = peak * rel_amp;
  std::size_t lo = 0, hi = psi.n() - 1;
  while (lo < hi && std::abs(psi.values[lo]) < thr) ++lo;
  while (hi > lo && std::abs(psi.values[hi]) < thr) --hi;
  return {psi.x(lo), psi.x(hi)};
}

ZWindow arrival_window(const GriddedWavefunction& psi_p, double T,
                       const PhysicalConstants& consts, double rel_amp) {
  const SupportRange sup = measure_support(psi_p, rel_amp);
  const double drop = 0.5 * consts.g * T * T;
  return {sup.lo / consts.m * T - drop - kArrivalMargin,
          sup.hi / consts.m * T - drop + kArrivalMargin};
}

GriddedWavefunction propagate_to_detector(const GriddedWavefunction& psi_p, double T,
                                          const PhysicalConstants& consts,
                                          std::optional<ZWindow> window) {
  if (psi_p.axis != Axis::momentum) throw UsageError("propagate_to_detector: need momentum input");
  if (psi_p.time != 0.0) throw UsageError("propagate_to_detector: input must be at t = 0");
  const std::size_t n = psi_p.n();
  if (!detail::is_pow2(n)) throw UsageError("propagate_to_detector: grid length must be 2^k");
  if (!(T > 0.0)) throw UsageError("propagate_to_detector: T must be > 0");

  const double m = consts.m;
  const double g = consts.g;
  const double hbar = consts.hbar;
  const double dp = psi_p.dx;
  const double dz = 2.0 * kPi * hbar / (dp * static_cast<double>(n));
  const double period = dz * static_cast<double>(n);  // position-space period of the DFT

  const ZWindow arrivals = arrival_window(psi_p, T, consts, 1e-7);
  double lo_needed = arrivals.lo;
  double hi_needed = arrivals.hi;
  if (window) {
    if (!(window->lo < window->hi)) throw UsageError("propagate_to_detector: bad window");
    lo_needed = std::min(lo_needed, window->lo - 2.0 * dz);
    hi_needed = std::max(hi_needed, window->hi + 2.0 * dz);
  }
  if (hi_needed - lo_needed > 0.99 * period)
    throw NumericsError(
        "propagate_to_detector: momentum grid too coarse for the evolution phase; the "
        "arrival span " +
        std::to_string(hi_needed - lo_needed) + " m exceeds the position period " +
        std::to_string(period) + " m (increase the pad factor)");

  const double z0_out = window ? window->lo : lo_needed;
  const double mgT = m * g * T;
  const double cubic_scale = 1.0 / (6.0 * hbar * m * m * g);
  const double twist = dp * z0_out / hbar;  // k-linear phase that anchors the window

  std::vector<std::complex<double>> a(n);
  {
    std::complex<double> rot(1.0, 0.0);
    const std::complex<double> rot_step(std::cos(twist), std::sin(twist));
    for (std::size_t k = 0; k < n; ++k) {
      if ((k & 511) == 0)
        rot = {std::cos(twist * static_cast<double>(k)), std::sin(twist * static_cast<double>(k))};
      const double q = psi_p.x(k);           // momentum at t = 0
      const double r = q - mgT;              // momentum at t = T
      const double phi = -(q * q * q - r * r * r) * cubic_scale;
      a[k] = psi_p.values[k] * std::complex<double>(std::cos(phi), std::sin(phi)) * rot;
      rot *= rot_step;
    }
  }
  detail::fft_pow2(a, +1);

  // full-grid norm canary (the transform chain is unitary)
  double sum_sq = 0.0;
  for (const auto& v : a) sum_sq += std::norm(v);
  const double nrm = dp * dp * dz * sum_sq / (2.0 * kPi * hbar);
  if (std::abs(nrm - 1.0) > 1e-5)
    throw NumericsError("propagate_to_detector: norm " + std::to_string(nrm) +
                        " fails the canary");

  const double slice_lo = window ? window->lo : lo_needed;
  const double slice_hi = window ? window->hi : hi_needed;
  std::size_t j_lo = static_cast<std::size_t>(
      std::max(0.0, std::floor((slice_lo - z0_out) / dz)));
  std::size_t j_hi = static_cast<std::size_t>(
      std::min(static_cast<double>(n - 1), std::ceil((slice_hi - z0_out) / dz)));
  if (j_hi <= j_lo) throw UsageError("propagate_to_detector: empty slice");

  GriddedWavefunction out;
  out.axis = Axis::position;
  out.time = T;
  out.dx = dz;
  out.x0 = z0_out + dz * static_cast<double>(j_lo);
  out.values.resize(j_hi - j_lo + 1);
  const double amp = dp / std::sqrt(2.0 * kPi * hbar);
  const double r0 = psi_p.x0 - mgT;
  const double base = r0 * out.x0 / hbar;
  const double step = r0 * dz / hbar;
  for (std::size_t j = 0; j < out.values.size(); ++j) {
    const double phi = base + step * static_cast<double>(j);
    out.values[j] = amp * a[j_lo + j] * std::complex<double>(std::cos(phi), std::sin(phi));
  }
  return out;
}

double farfield_map(double Z, double T, double z0, const PhysicalConstants& consts) {
  if (!(T > 0.0)) throw UsageError("farfield_map: T must be > 0");
  const double z_c = -5.0 * z0 / 3.0;
  return consts.m / T * (Z + 0.5 * consts.g * T * T - z_c);
}

std::vector<double> farfield_pattern(const GriddedWavefunction& psi_p, double T, double z0,
                                     const std::vector<double>& z_grid,
                                     const PhysicalConstants& consts) {
  if (psi_p.axis != Axis::momentum) throw UsageError("farfield_pattern: need momentum input");
  const double jac = consts.m / T;
  std::vector<double> out(z_grid.size());
  const std::size_t n = psi_p.n();
  for (std::size_t i = 0; i < z_grid.size(); ++i) {
    const double p = farfield_map(z_grid[i], T, z0, consts);
    const double u = (p - psi_p.x0) / psi_p.dx;
    if (u < 1.0 || u > static_cast<double>(n - 3))
      throw NumericsError("farfield_pattern: p_Z = " + std::to_string(p) +
                          " outside the momentum grid");
    const std::size_t i1 = static_cast<std::size_t>(u);
    const double f = u - static_cast<double>(i1);
    // cubic Lagrange on the density through the 4 nearest samples
    const double d0 = std::norm(psi_p.values[i1 - 1]);
    const double d1 = std::norm(psi_p.values[i1]);
    const double d2 = std::norm(psi_p.values[i1 + 1]);
    const double d3 = std::norm(psi_p.values[i1 + 2]);
    const double c0 = -f * (f - 1.0) * (f - 2.0) / 6.0;
    const double c1 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
    const double c2 = -(f + 1.0) * f * (f - 2.0) / 2.0;
    const double c3 = (f + 1.0) * f * (f - 1.0) / 6.0;
    out[i] = jac * (c0 * d0 + c1 * d1 + c2 * d2 + c3 * d3);
  }
  return out;
}

std::size_t recommended_pad(const EnergyAmplitude& c1, const PhysicalConstants& consts, double T,
                            double extra_window) {
  const GriddedWavefunction base = momentum_representation(c1, consts, 1,
                                                           MomentumWindow::nonnegative, 0.0);
  const SupportRange sup = measure_support(base, 1e-7);
  const double span =
      (sup.hi - sup.lo) / consts.m * T + 2.0 * kArrivalMargin + extra_window + 0.02;
  // the position-space period n*dz = 2 pi hbar / dp grows linearly with padding
  const double period1 = 2.0 * kPi * consts.hbar / base.dx;
  std::size_t pad = 1;
  while (period1 * static_cast<double>(pad) < span / 0.95 && pad < (1u << 12)) pad <<= 1;
  return pad;
}

}  // namespace bounce
