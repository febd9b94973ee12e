#pragma once

namespace bounce {

// Physical inputs, all SI.  g0 is the reference acceleration used to make
// Fisher informations dimensionless.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double m = 1.6735575e-27;       // kg, atomic hydrogen
  double g = 9.81;                // m/s^2
  double g0 = 9.80665;            // m/s^2

  // Sanity band for accelerations; catches unit mistakes in configs.
  double g_band_lo = 1.0;
  double g_band_hi = 100.0;

  void validate() const;  // throws ConfigError
};

// Natural scales of the linear-potential problem:
//   l_gqs = (hbar^2 / (2 g m^2))^{1/3},  e_gqs = m g l_gqs,  t_gqs = hbar/e_gqs.
struct GqsScales {
  double l_gqs;  // m
  double e_gqs;  // J
  double t_gqs;  // s
};

struct Reduced {
  double zeta;  // z / l_gqs
  double eps;   // E / e_gqs
  double nu;    // v t_gqs / l_gqs
};

GqsScales gqs_scales(const PhysicalConstants& c);

Reduced reduce(double z, double energy, double v, const GqsScales& s);

}  // namespace bounce
