#include "bounce/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bounce/airy.hpp"
#include "bounce/errors.hpp"

namespace bounce::semiclassical {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

CubicCoeffs cubic_coeffs(double z0, double Z, double T, double g) {
  CubicCoeffs c;
  c.L = 0.5 * g * T * T;
  c.lambda = (c.L - 2.0 * (Z + z0)) / 3.0;
  c.mu = z0 - Z;
  return c;
}

double discriminant(const CubicCoeffs& c) {
  return c.lambda * c.lambda * c.lambda - c.L * c.mu * c.mu;
}

std::vector<double> bounce_times(double z0, double Z, double T, double g) {
  if (!(T > 0.0) || !(z0 > 0.0)) throw UsageError("bounce_times: need T > 0 and z0 > 0");
  const CubicCoeffs c = cubic_coeffs(z0, Z, T, g);
  const double p = -1.5 * c.lambda / g;
  const double q = -0.5 * T * c.mu / g;
  const double d = discriminant(c);
  const double d_scale = std::abs(c.lambda * c.lambda * c.lambda) + c.L * c.mu * c.mu + 1e-300;

  std::vector<double> reduced;
  if (d > 1e-13 * d_scale) {
    // three real roots; lambda > 0 is guaranteed here so p < 0
    const double amp = 2.0 * std::sqrt(-p / 3.0);
    double cosarg = 3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p);
    cosarg = std::clamp(cosarg, -1.0, 1.0);
    const double phi = std::acos(cosarg) / 3.0;
    for (int k = 0; k < 3; ++k)
      reduced.push_back(amp * std::cos(phi - 2.0 * kPi * k / 3.0));
  } else if (d < -1e-13 * d_scale) {
    // single real root, Vieta substitution with the cancellation-safe cube root
    const double a = -0.5 * q;
    const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double u3 = a >= 0.0 ? a + s : a - s;
    if (u3 == 0.0) {
      reduced.push_back(0.0);
    } else {
      const double u = std::cbrt(u3);
      reduced.push_back(u - p / (3.0 * u));
    }
  } else {
    // caustic band: the sqrt(D) gap is below what double precision can
    // resolve, so report the two coalescing physical paths as one exactly
    // repeated root plus the simple root
    if (p == 0.0) {
      reduced.push_back(0.0);
    } else {
      reduced.push_back(3.0 * q / p);
      reduced.push_back(-1.5 * q / p);
      reduced.push_back(-1.5 * q / p);
    }
  }

  std::vector<double> out;
  for (double tb_red : reduced) {
    const double tb = tb_red + 0.5 * T;
    if (tb > 0.0 && tb < T) out.push_back(tb);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Eliminating the launch and bounce velocities from the two parabolic arcs
// gives z0 (T - t_b) = Z t_b + g t_b (T - t_b)(T/2 - t_b); its depressed form
// is the reduced cubic solved above.
double bounce_residual(double z0, double Z, double T, double g, double t_b) {
  return z0 * (T - t_b) - Z * t_b - g * t_b * (T - t_b) * (0.5 * T - t_b);
}

BranchpointData branchpoint(double z0, double T, double g) {
  if (!(z0 > 0.0) || !(T > 0.0) || !(g > 0.0))
    throw UsageError("branchpoint: need positive z0, T, g");
  BranchpointData b;
  b.v_c = std::sqrt(6.0 * g * z0);
  b.z_c = -5.0 * z0 / 3.0;
  const double L = 0.5 * g * T * T;
  b.Z_c = -L + b.v_c * T + b.z_c;

  // exact root of D(Z) = 0 near the estimate; D increases through the caustic
  auto dval = [&](double Z) { return discriminant(cubic_coeffs(z0, Z, T, g)); };
  double lo = b.Z_c - z0, hi = b.Z_c + z0;
  double span = z0;
  while (dval(lo) > 0.0 && span < 0.5 * L + 10.0 * z0) {
    span *= 2.0;
    lo = b.Z_c - span;
  }
  while (dval(hi) < 0.0 && span < 0.5 * L + 10.0 * z0) {
    span *= 2.0;
    hi = b.Z_c + span;
  }
  if (!(dval(lo) <= 0.0 && dval(hi) >= 0.0))
    throw NumericsError("branchpoint: failed to bracket the D = 0 root");
  for (int i = 0; i < 200 && hi - lo > 1e-16 * (std::abs(lo) + std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (dval(mid) < 0.0 ? lo : hi) = mid;
  }
  b.Z_c_exact = 0.5 * (lo + hi);
  return b;
}

double gamma_fringe(double sigma_v, const PhysicalConstants& c) {
  if (!(sigma_v > 0.0)) throw UsageError("gamma_fringe: sigma_v must be > 0");
  const double gamma =
      std::pow(3.0 * c.m / (c.hbar * c.g), 2.0 / 3.0) * sigma_v * sigma_v;
  if (gamma < kGammaHardMin)
    throw ModelError("gamma = " + std::to_string(gamma) +
                     " below " + std::to_string(kGammaHardMin) +
                     "; uniform Airy model invalid (too few fringes)");
  return gamma;
}

PatternModel::PatternModel(double z0, double T, double sigma_v, const PhysicalConstants& c)
    : z0_(z0), T_(T), g_(c.g) {
  if (!(z0 > 0.0) || !(T > 0.0)) throw UsageError("PatternModel: need z0, T > 0");
  gamma_ = gamma_fringe(sigma_v, c);
  L_ = 0.5 * g_ * T * T;
  k_ = std::pow(c.m, 2.0 / 3.0) /
       std::pow(2.0 * c.hbar * T * std::sqrt(3.0 * L_), 2.0 / 3.0);
}

double PatternModel::delta(double Z) const {
  const CubicCoeffs c = cubic_coeffs(z0_, Z, T_, g_);
  const double lm = c.lambda * c.mu;
  if (!(lm > 0.0))
    throw ModelError("pattern model: lambda*mu <= 0 at Z = " + std::to_string(Z) +
                     "; outside the model domain");
  return k_ * discriminant(c) / std::pow(lm, 2.0 / 3.0);
}

double PatternModel::ddelta_dZ(double Z) const {
  const CubicCoeffs c = cubic_coeffs(z0_, Z, T_, g_);
  const double lm = c.lambda * c.mu;
  if (!(lm > 0.0))
    throw ModelError("pattern model: lambda*mu <= 0 at Z = " + std::to_string(Z));
  const double d = discriminant(c);
  const double dd = -2.0 * c.lambda * c.lambda + 2.0 * c.L * c.mu;  // dD/dZ
  const double dlm = -(2.0 / 3.0) * c.mu - c.lambda;                // d(lambda mu)/dZ
  return k_ * (dd * std::pow(lm, -2.0 / 3.0) -
               (2.0 / 3.0) * d * std::pow(lm, -5.0 / 3.0) * dlm);
}

double PatternModel::amplitude(double Z) const {
  const double slope = ddelta_dZ(Z);
  if (!(slope > 0.0))
    throw ModelError("pattern model: dDelta/dZ <= 0 at Z = " + std::to_string(Z));
  const double d = delta(Z);
  return std::pow(8.0 * kPi / gamma_, 0.25) * std::sqrt(slope) *
         std::abs(airy::ai_real(-d)) * std::exp(-d / gamma_);
}

FarfieldModel::FarfieldModel(double z0, double sigma_v, const PhysicalConstants& c) {
  if (!(z0 > 0.0)) throw UsageError("FarfieldModel: need z0 > 0");
  gamma_ = gamma_fringe(sigma_v, c);
  v_c_ = std::sqrt(6.0 * c.g * z0);
  coef_ = std::pow(c.m, 2.0 / 3.0) / std::pow(9.0 * c.hbar * c.g, 2.0 / 3.0);
}

double FarfieldModel::delta(double v1) const {
  return coef_ * (v1 * v1 - v_c_ * v_c_);
}

double FarfieldModel::ddelta_dv(double v1) const {
  return 2.0 * coef_ * v1;
}

double FarfieldModel::amplitude(double v1) const {
  const double slope = ddelta_dv(v1);
  if (!(slope > 0.0))
    throw ModelError("far-field model: dDelta/dv <= 0 at v1 = " + std::to_string(v1));
  const double d = delta(v1);
  return std::pow(8.0 * kPi / gamma_, 0.25) * std::sqrt(slope) *
         std::abs(airy::ai_real(-d)) * std::exp(-d / gamma_);
}

std::vector<double> model_pattern(const std::vector<double>& z, const PatternModel& m) {
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = m.amplitude(z[i]);
  return out;
}

std::vector<double> model_farfield(const std::vector<double>& v1, const FarfieldModel& m) {
  std::vector<double> out(v1.size());
  for (std::size_t i = 0; i < v1.size(); ++i) out[i] = m.amplitude(v1[i]);
  return out;
}

double optimal_v0(double z0, double g) {
  if (!(z0 > 0.0) || !(g > 0.0)) throw UsageError("optimal_v0: need z0, g > 0");
  return -std::sqrt(6.0 * g * z0) / 3.0;
}

}  // namespace bounce::semiclassical
