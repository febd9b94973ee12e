#include "bounce/constants.hpp"

#include <cmath>
#include <string>

#include "bounce/errors.hpp"

namespace bounce {

void PhysicalConstants::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError(std::string("constants.") + name + " must be strictly positive");
  };
  positive(hbar, "hbar");
  positive(m, "mass");
  positive(g, "g");
  positive(g0, "g0");
  if (g < g_band_lo || g > g_band_hi)
    throw ConfigError("constants.g outside the plausibility band [" +
                      std::to_string(g_band_lo) + ", " + std::to_string(g_band_hi) + "] m/s^2");
  if (g0 < g_band_lo || g0 > g_band_hi)
    throw ConfigError("constants.g0 outside the plausibility band");
}

GqsScales gqs_scales(const PhysicalConstants& c) {
  c.validate();
  GqsScales s;
  s.l_gqs = std::cbrt(c.hbar * c.hbar / (2.0 * c.g * c.m * c.m));
  s.e_gqs = c.m * c.g * s.l_gqs;
  s.t_gqs = c.hbar / s.e_gqs;
  return s;
}

Reduced reduce(double z, double energy, double v, const GqsScales& s) {
  return {z / s.l_gqs, energy / s.e_gqs, v * s.t_gqs / s.l_gqs};
}

}  // namespace bounce
