// Airy functions for the bounce pipeline.
//
// Three regimes, selected by |argument|:
//   * |w| <= 3.6          power series stepped out from the origin
//   * 3.6 < |w| < 14      Taylor continuation of y'' = w y from an anchor
//                         at |w| = 14 (inward stepping keeps Ai stable on
//                         the decaying side)
//   * |w| >= 14           large-argument expansions; at that radius the
//                         smallest term is below 1e-15 relative
//
// Bi is only needed on the real line.  Outward stepping from the origin is
// stable for Bi since it is the dominant solution for x > 0.

#include "bounce/airy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace bounce::airy {
namespace {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.7724538509055160273;

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3), Bi = sqrt(3) * those.
constexpr double kAi0 = 0.35502805388781723926;
constexpr double kAip0 = -0.25881940379280679840;
constexpr double kBi0 = 0.61492662744600073515;
constexpr double kBip0 = 0.44828835735382635791;

constexpr int kAsymTerms = 40;

struct AsymTables {
  std::array<double, kAsymTerms> u{};
  std::array<double, kAsymTerms> v{};
  AsymTables() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 0; k + 1 < kAsymTerms; ++k) {
      const double kk = k;
      u[k + 1] = u[k] * (6 * kk + 1) * (6 * kk + 3) * (6 * kk + 5) /
                 (216.0 * (kk + 1) * (2 * kk + 1));
      v[k + 1] = -u[k + 1] * (6 * (kk + 1) + 1) / (6 * (kk + 1) - 1);
    }
  }
};

const AsymTables& tables() {
  static const AsymTables t;
  return t;
}

template <class S>
struct ValueSlope {
  S y;
  S yp;
};

// One Taylor step of y'' = z y from z0 to z0 + h.
template <class S>
void taylor_step(S z0, S h, S& y, S& yp) {
  constexpr int kMax = 56;
  S a[kMax];
  a[0] = y;
  a[1] = yp;
  a[2] = z0 * y * 0.5;
  S sum_y = a[0] + a[1] * h + a[2] * h * h;
  S sum_yp = a[1] + 2.0 * a[2] * h;
  S hk = h * h;  // h^k while the y-sum is at order k
  double scale = std::max(std::abs(sum_y), std::abs(sum_yp));
  int small_run = 0;  // every third coefficient can vanish identically
  for (int k = 2; k + 1 < kMax; ++k) {
    a[k + 1] = (z0 * a[k - 1] + a[k - 2]) / static_cast<double>(k * (k + 1));
    sum_yp += static_cast<double>(k + 1) * a[k + 1] * hk;
    hk *= h;
    const S term = a[k + 1] * hk;
    sum_y += term;
    scale = std::max(scale, std::abs(sum_y));
    small_run = std::abs(term) < 1e-18 * scale ? small_run + 1 : 0;
    if (small_run >= 3 && k > 6) break;
  }
  y = sum_y;
  yp = sum_yp;
}

// Continue (y, y') of y'' = z y along the straight segment z_from -> z_to.
template <class S>
void taylor_walk(S z_from, S z_to, S& y, S& yp) {
  const double dist = std::abs(z_to - z_from);
  const int n = std::max(1, static_cast<int>(std::ceil(dist / 0.7)));
  const S h = (z_to - z_from) / static_cast<double>(n);
  S z = z_from;
  for (int i = 0; i < n; ++i) {
    taylor_step(z, h, y, yp);
    z += h;
  }
}

// sum_k sign^k c_k xi^{-k}, truncated at the smallest term.
template <class S>
S asym_sum(const std::array<double, kAsymTerms>& c, S inv_xi, double sign) {
  S sum = S(1.0);
  S pow = S(1.0);
  double prev = 1e300;
  for (int k = 1; k < kAsymTerms; ++k) {
    pow *= inv_xi * sign;
    const S term = pow * c[k];
    const double mag = std::abs(term);
    if (mag > prev) break;  // divergence onset
    sum += term;
    prev = mag;
    if (mag < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Even/odd split used on the oscillatory side:
//   even = sum (-1)^k c_{2k} xi^{-2k},  odd = sum (-1)^k c_{2k+1} xi^{-2k-1}.
template <class S>
void asym_sum_split(const std::array<double, kAsymTerms>& c, S inv_xi, S& even, S& odd) {
  const S inv2 = inv_xi * inv_xi;
  even = S(1.0);
  odd = c[1] * inv_xi;
  S pe = S(1.0);
  S po = inv_xi;
  double prev_e = 1e300, prev_o = 1e300;
  bool done_e = false, done_o = false;
  for (int k = 1; 2 * k + 1 < kAsymTerms; ++k) {
    pe *= -inv2;
    po *= -inv2;
    if (!done_e) {
      const S te = pe * c[2 * k];
      const double mag = std::abs(te);
      if (mag > prev_e) {
        done_e = true;
      } else {
        even += te;
        prev_e = mag;
        if (mag < 1e-17 * std::abs(even)) done_e = true;
      }
    }
    if (!done_o) {
      const S to = po * c[2 * k + 1];
      const double mag = std::abs(to);
      if (mag > prev_o) {
        done_o = true;
      } else {
        odd += to;
        prev_o = mag;
        if (mag < 1e-17 * std::abs(odd)) done_o = true;
      }
    }
    if (done_e && done_o) break;
  }
}

// Decaying-side expansion of Ai, valid away from the negative real axis.
ValueSlope<cplx> ai_asym_decay(cplx w) {
  const cplx xi = (2.0 / 3.0) * std::pow(w, 1.5);
  const double grow = -xi.real();
  if (grow > 705.0) throw std::range_error("ai_complex: overflow in Airy growth region");
  if (grow < -745.0) return {cplx(0.0), cplx(0.0)};  // clean underflow
  const cplx inv_xi = 1.0 / xi;
  const cplx s = asym_sum(tables().u, inv_xi, -1.0);
  const cplx sp = asym_sum(tables().v, inv_xi, -1.0);
  const cplx q = std::pow(w, 0.25);
  const cplx e = std::exp(-xi);
  return {e * s / (2.0 * kSqrtPi * q), -q * e * sp / (2.0 * kSqrtPi)};
}

// Oscillatory-side expansion written in terms of z = -w.
ValueSlope<cplx> ai_asym_osc(cplx w) {
  const cplx z = -w;
  const cplx xi = (2.0 / 3.0) * std::pow(z, 1.5);
  if (std::abs(xi.imag()) > 705.0)
    throw std::range_error("ai_complex: overflow in oscillatory Airy phase");
  const cplx inv_xi = 1.0 / xi;
  cplx p, q, r, s;
  asym_sum_split(tables().u, inv_xi, p, q);
  asym_sum_split(tables().v, inv_xi, r, s);
  const cplx arg = xi + kPi / 4.0;
  const cplx sinA = std::sin(arg);
  const cplx cosA = std::cos(arg);
  const cplx q4 = std::pow(z, 0.25);
  return {(sinA * p - cosA * q) / (kSqrtPi * q4),
          -(cosA * r + sinA * s) * q4 / kSqrtPi};
}

ValueSlope<cplx> ai_asym(cplx w) {
  return std::abs(std::arg(w)) <= 2.0 ? ai_asym_decay(w) : ai_asym_osc(w);
}

// All four functions on the oscillatory (negative real) side.
AiryQuad asym_quad_neg(double x) {
  const double z = -x;
  const double xi = (2.0 / 3.0) * std::pow(z, 1.5);
  const double inv_xi = 1.0 / xi;
  double p, q, r, s;
  asym_sum_split(tables().u, inv_xi, p, q);
  asym_sum_split(tables().v, inv_xi, r, s);
  const double arg = xi + kPi / 4.0;
  const double sinA = std::sin(arg);
  const double cosA = std::cos(arg);
  const double q4 = std::pow(z, 0.25);
  AiryQuad out;
  out.ai = (sinA * p - cosA * q) / (kSqrtPi * q4);
  out.bi = (cosA * p + sinA * q) / (kSqrtPi * q4);
  out.ai_prime = -(cosA * r + sinA * s) * q4 / kSqrtPi;
  out.bi_prime = (sinA * r - cosA * s) * q4 / kSqrtPi;
  return out;
}

ValueSlope<double> bi_asym_pos(double x) {
  const double xi = (2.0 / 3.0) * std::pow(x, 1.5);
  if (xi > 705.0) throw std::range_error("bi_real: overflow for large positive argument");
  const double inv_xi = 1.0 / xi;
  const double s = asym_sum(tables().u, inv_xi, 1.0);
  const double sp = asym_sum(tables().v, inv_xi, 1.0);
  const double q4 = std::pow(x, 0.25);
  const double e = std::exp(xi);
  return {e * s / (kSqrtPi * q4), q4 * e * sp / kSqrtPi};
}

ValueSlope<double> ai_real_vs(double x) {
  if (x >= 14.0) {
    const auto a = ai_asym_decay(cplx(x, 0.0));
    return {a.y.real(), a.yp.real()};
  }
  if (x <= -14.0) {
    const auto q = asym_quad_neg(x);
    return {q.ai, q.ai_prime};
  }
  if (std::abs(x) <= 3.6) {
    double y = kAi0, yp = kAip0;
    taylor_walk(0.0, x, y, yp);
    return {y, yp};
  }
  // mid band: step inward from the asymptotic anchor (Ai is recessive for
  // x > 0, so outward stepping from the origin would lose digits)
  const double anchor = x > 0 ? 14.0 : -14.0;
  ValueSlope<double> v = ai_real_vs(anchor);
  taylor_walk(anchor, x, v.y, v.yp);
  return v;
}

ValueSlope<double> bi_real_vs(double x) {
  if (x > 100.0) throw std::range_error("bi_real: argument > 100 (growth policy)");
  if (x >= 14.0) return bi_asym_pos(x);
  if (x <= -14.0) {
    const auto q = asym_quad_neg(x);
    return {q.bi, q.bi_prime};
  }
  double y = kBi0, yp = kBip0;
  taylor_walk(0.0, x, y, yp);
  return {y, yp};
}

void check_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(who) + ": non-finite argument");
}

}  // namespace

double ai_real(double x) {
  check_finite(x, "ai_real");
  return ai_real_vs(x).y;
}

double ai_prime_real(double x) {
  check_finite(x, "ai_prime_real");
  return ai_real_vs(x).yp;
}

double bi_real(double x) {
  check_finite(x, "bi_real");
  return bi_real_vs(x).y;
}

double bi_prime_real(double x) {
  check_finite(x, "bi_prime_real");
  return bi_real_vs(x).yp;
}

AiryPair airy_pair(double x) {
  return {ai_real(x), bi_real(x)};
}

AiryQuad airy_quad(double x) {
  check_finite(x, "airy_quad");
  if (x <= -14.0) return asym_quad_neg(x);
  const auto a = ai_real_vs(x);
  const auto b = bi_real_vs(x);
  return {a.y, a.yp, b.y, b.yp};
}

std::complex<double> ai_complex(std::complex<double> w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
    throw std::domain_error("ai_complex: non-finite argument");
  const double r = std::abs(w);
  if (r <= 3.6) {
    cplx y = kAi0, yp = kAip0;
    taylor_walk(cplx(0.0), w, y, yp);
    return y;
  }
  if (r >= 14.0) return ai_asym(w).y;
  // Mid band.  Ai is recessive only inside |arg w| < pi/3: there an anchored
  // inward continuation is the stable one, elsewhere Ai dominates and walking
  // out from the origin is stable.
  if (std::abs(std::arg(w)) > kPi / 3.0) {
    cplx y = kAi0, yp = kAip0;
    taylor_walk(cplx(0.0), w, y, yp);
    return y;
  }
  const cplx anchor = w * (14.0 / r);
  auto v = ai_asym(anchor);
  taylor_walk(anchor, w, v.y, v.yp);
  return v.y;
}

double reflection_phase(double eps) {
  check_finite(eps, "reflection_phase");
  if (eps < -30.0) {
    // rho -> 1 from above; phase ~ 2 Ai/Bi = exp(-(4/3)|eps|^{3/2})
    const double t = (4.0 / 3.0) * std::pow(-eps, 1.5);
    return t > 700.0 ? 0.0 : std::exp(-t);
  }
  if (eps <= -2.0) {
    // pi - 2 atan2(Bi, Ai) with Ai/Bi tiny cancels; use the ratio form
    return 2.0 * std::atan(ai_real(-eps) / bi_real(-eps));
  }
  const double ai = ai_real(-eps);
  const double bi = bi_real(-eps);
  const double theta_raw = std::atan2(bi, ai);
  // asymptotically arg(Ai - i Bi at -eps ...) unwinds as pi/4 - (2/3)eps^{3/2}
  const double zeta = eps > 0 ? (2.0 / 3.0) * std::pow(eps, 1.5) : 0.0;
  const double theta_est = kPi / 4.0 - zeta;
  const double m = std::round((theta_est - theta_raw) / (2.0 * kPi));
  const double theta = theta_raw + 2.0 * kPi * m;
  return kPi - 2.0 * theta;
}

}  // namespace bounce::airy
