#pragma once

#include <vector>

#include "bounce/constants.hpp"

namespace bounce::semiclassical {

// Reduced coefficients of the bounce-time cubic
//   tb'^3 - (3 lambda / 2g) tb' - T mu / 2g = 0,  tb' = t_b - T/2.
struct CubicCoeffs {
  double L;       // g T^2 / 2
  double lambda;  // (L - 2(Z + z0)) / 3
  double mu;      // z0 - Z
};

CubicCoeffs cubic_coeffs(double z0, double Z, double T, double g);

// D = lambda^3 - L mu^2.  Positive: two distinct classical bounce paths;
// zero: caustic; negative: complex pair (classically forbidden).
double discriminant(const CubicCoeffs& c);

// Physical bounce times, filtered to 0 < t_b < T, ascending.  Empty in the
// classically forbidden region; the root near 3T/2 is dropped by the filter.
// Inside the caustic band (|D| below double resolution) the two coalescing
// paths come back as one exactly repeated time.
std::vector<double> bounce_times(double z0, double Z, double T, double g);

// Residual of the unreduced bounce-time equation (diagnostic for tests).
double bounce_residual(double z0, double Z, double T, double g, double t_b);

struct BranchpointData {
  double Z_c;        // closed-form estimate -L + v_c T + z_c
  double v_c;        // sqrt(6 g z0)
  double z_c;        // -5 z0 / 3
  double Z_c_exact;  // root of D(Z) = 0 found numerically near the estimate
};

BranchpointData branchpoint(double z0, double T, double g);

constexpr double kGammaHardMin = 10.0;
constexpr double kGammaWarn = 30.0;

// Fringe count gamma = (3m/(hbar g))^{2/3} sigma_v^2; throws ModelError
// below kGammaHardMin where the uniform approximation breaks down.
double gamma_fringe(double sigma_v, const PhysicalConstants& c);

// Uniform Airy model of the detector pattern amplitude,
//   |Psi(Z)| = (8 pi / gamma)^{1/4} sqrt(dDelta/dZ) |Ai(-Delta)| exp(-Delta/gamma),
//   Delta(Z) = m^{2/3} D / (2 hbar T sqrt(3L) lambda mu)^{2/3}.
class PatternModel {
 public:
  PatternModel(double z0, double T, double sigma_v, const PhysicalConstants& c);

  double gamma() const { return gamma_; }
  double delta(double Z) const;
  double ddelta_dZ(double Z) const;
  double amplitude(double Z) const;

 private:
  double z0_, T_, g_, L_, gamma_, k_;
};

// Far-field limit of the model versus image velocity v1,
//   Delta~(v1) = m^{2/3} (v1^2 - v_c^2) / (9 hbar g)^{2/3}.
class FarfieldModel {
 public:
  FarfieldModel(double z0, double sigma_v, const PhysicalConstants& c);

  double gamma() const { return gamma_; }
  double v_c() const { return v_c_; }
  double delta(double v1) const;
  double ddelta_dv(double v1) const;
  double amplitude(double v1) const;

 private:
  double v_c_, gamma_, coef_;
};

std::vector<double> model_pattern(const std::vector<double>& z, const PatternModel& m);
std::vector<double> model_farfield(const std::vector<double>& v1, const FarfieldModel& m);

// Initial velocity that parks the packet center on the caustic at the
// far-field limit: v0 = -sqrt(6 g z0) / 3.
double optimal_v0(double z0, double g);

}  // namespace bounce::semiclassical
