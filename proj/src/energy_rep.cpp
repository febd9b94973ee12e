#include "bounce/energy_rep.hpp"

#include <cmath>
#include <string>

#include "bounce/airy.hpp"
#include "bounce/errors.hpp"
#include "bounce/fft.hpp"

namespace bounce {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void WavepacketParams::validate(const PhysicalConstants& c) const {
  if (!(z0 > 0.0)) throw ConfigError("wavepacket.z0_m must be > 0");
  if (!(sigma_v > 0.0)) throw ConfigError("wavepacket.sigma_v_mps must be > 0");
  if (!(T > 0.0)) throw ConfigError("wavepacket.T_s must be > 0");
  if (!(n_events >= 1.0)) throw ConfigError("wavepacket.n_events must be >= 1");
  if (!std::isfinite(v0)) throw ConfigError("wavepacket.v0_mps must be finite");
  const double sz = sigma_z(c);
  if (z0 < 5.0 * sz)
    throw ConfigError("wavepacket.z0_m = " + std::to_string(z0) +
                      " is below 5 sigma_z = " + std::to_string(5.0 * sz) +
                      "; the packet must sit above the mirror");
}

void EnergyGrid::validate() const {
  if (!(e_min < e_max)) throw ConfigError("grid: e_min must be < e_max");
  if (n < (1u << 10) || !detail::is_pow2(n))
    throw ConfigError("grid.n must be a power of two >= 1024");
}

double EnergyAmplitude::norm() const {
  const double de = grid.de();
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
    acc += w * std::norm(values[i]);
  }
  return acc * de;
}

EnergyGrid default_energy_grid(const WavepacketParams& p, const PhysicalConstants& c,
                               std::size_t n, double halfwidth_sigmas) {
  p.validate(c);
  const GqsScales s = gqs_scales(c);
  const double e_mean = c.m * c.g * p.z0 + 0.5 * c.m * p.v0 * p.v0;
  const double sigma_e =
      c.m * (std::abs(p.v0) + p.sigma_v) * p.sigma_v + c.m * c.g * p.sigma_z(c);
  EnergyGrid grid;
  grid.e_min = std::max(e_mean - halfwidth_sigmas * sigma_e, -20.0 * s.e_gqs);
  grid.e_max = e_mean + halfwidth_sigmas * sigma_e;

  if (n == 0) {
    // The FFT momentum window is 2 pi hbar g / dE wide.  Size dE so the
    // fastest image-wave component -- fed by the 7.5 sigma up-moving tail of
    // the initial velocity distribution -- stays inside it.
    const double u0 = s.l_gqs / s.t_gqs;
    const double zeta0 = p.z0 / s.l_gqs;
    const double nu_up = std::max(0.0, (p.v0 + 7.5 * p.sigma_v) / u0);
    const double v_fast = u0 * (4.0 * std::sqrt(zeta0 + 0.25 * nu_up * nu_up) + nu_up);
    const double v_window = v_fast * 1.03 + 0.01;
    const double de_max = 2.0 * kPi * c.hbar * c.g / v_window;
    const double n_min = (grid.e_max - grid.e_min) / de_max;
    std::size_t nn = 1u << 14;
    while (static_cast<double>(nn) < n_min) nn <<= 1;
    grid.n = nn;
  } else {
    grid.n = n;
  }
  grid.validate();
  return grid;
}

EnergyAmplitude initial_amplitude(const WavepacketParams& p, const PhysicalConstants& c,
                                  const EnergyGrid& grid, double norm_tol) {
  p.validate(c);
  grid.validate();
  const GqsScales s = gqs_scales(c);
  const double zeta0 = p.z0 / s.l_gqs;
  const double nu0 = p.v0 * s.t_gqs / s.l_gqs;
  const double sz = p.sigma_z(c) / s.l_gqs;  // sigma_zeta
  const double sz2 = sz * sz;

  const double pref = std::pow(8.0 * kPi, 0.25) * std::sqrt(sz / s.e_gqs);
  EnergyAmplitude amp;
  amp.grid = grid;
  amp.tag = AmplitudeTag::initial;
  amp.values.resize(grid.n);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double eps = grid.energy(i) / s.e_gqs;
    const std::complex<double> w(zeta0 - eps + sz2 * sz2, sz2 * nu0);
    const std::complex<double> expo =
        sz2 * std::complex<double>(zeta0 - eps - 0.25 * nu0 * nu0 + sz2 * (2.0 / 3.0) * sz2,
                                   sz2 * nu0);
    amp.values[i] = pref * airy::ai_complex(w) * std::exp(expo);
  }

  const double nrm = amp.norm();
  if (std::abs(nrm - 1.0) > norm_tol)
    throw NumericsError("initial_amplitude: |c0|^2 integrates to " + std::to_string(nrm) +
                        "; energy grid too narrow or too coarse");
  return amp;
}

std::complex<double> reflection_amplitude(double energy, const PhysicalConstants& c) {
  if (!std::isfinite(energy)) throw std::domain_error("reflection_amplitude: non-finite energy");
  const GqsScales s = gqs_scales(c);
  const double eps = energy / s.e_gqs;
  if (eps < -30.0) return {1.0, 0.0};  // deep sub-barrier limit, Ai/Bi < 1e-70
  const auto [ai, bi] = airy::airy_pair(-eps);
  const std::complex<double> num(ai, -bi);
  const std::complex<double> den(ai, bi);
  return -num / den;
}

EnergyAmplitude apply_bounce(const EnergyAmplitude& c0, const PhysicalConstants& c) {
  if (c0.tag != AmplitudeTag::initial)
    throw UsageError("bounce: amplitude must carry the initial tag");
  const GqsScales s = gqs_scales(c);
  EnergyAmplitude out;
  out.grid = c0.grid;
  out.tag = AmplitudeTag::reflected;
  out.values.resize(c0.values.size());
  for (std::size_t i = 0; i < c0.values.size(); ++i) {
    const double e = c0.grid.energy(i);
    const double eps = e / s.e_gqs;
    std::complex<double> rho;
    if (eps < -30.0) {
      rho = {1.0, 0.0};
    } else {
      const auto [ai, bi] = airy::airy_pair(-eps);
      rho = -std::complex<double>(ai, -bi) / std::complex<double>(ai, bi);
    }
    out.values[i] = rho * c0.values[i];
  }
  return out;
}

}  // namespace bounce
