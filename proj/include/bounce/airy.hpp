#pragma once

#include <complex>

namespace bounce::airy {

// Values of Ai and Bi at a common real argument.
struct AiryPair {
  double ai;
  double bi;
};

// Ai, Bi and first derivatives at a common real argument.
struct AiryQuad {
  double ai;
  double ai_prime;
  double bi;
  double bi_prime;
};

// Airy function of the first kind on the real line.
// Absolute accuracy ~1e-14 on [-100, 30]; oscillatory asymptotics carry a
// phase of (2/3)|x|^{3/2}, so for very large negative x the accuracy is
// limited by double argument reduction (~1e-9 relative near x = -1e5).
// Underflows gracefully to 0 for large positive x.  Throws std::domain_error
// on non-finite input.
double ai_real(double x);

// Airy function of the second kind on the real line.  Grows like
// exp((2/3)x^{3/2}) for x > 0; throws std::range_error for x > 100 where the
// scattering problem never needs it.
double bi_real(double x);

double ai_prime_real(double x);
double bi_prime_real(double x);

AiryPair airy_pair(double x);
AiryQuad airy_quad(double x);

// Ai on the complex plane (principal branch).  Throws std::range_error when
// the result would overflow a double; underflows to 0 where Ai genuinely
// vanishes.
std::complex<double> ai_complex(std::complex<double> w);

// Continuous (unwrapped) phase of the hard-mirror reflection amplitude,
//   rho(eps) = -(Ai(-eps) - i Bi(-eps)) / (Ai(-eps) + i Bi(-eps)),
// normalized so that phase(0) = pi/3.  Strictly increasing in eps; grows as
// (4/3) eps^{3/2} + pi/2 for large positive eps.
double reflection_phase(double eps);

}  // namespace bounce::airy
