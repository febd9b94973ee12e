#include "bounce/fft.hpp"

#include <cmath>

#include "bounce/errors.hpp"

namespace bounce::detail {

bool is_pow2(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_pow2(n)) throw UsageError("fft_pow2: length must be a power of two");

  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const std::size_t half = len >> 1;
    const std::complex<double> step(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < half; ++k) {
        // resync the rotation now and then to stop roundoff drift
        if ((k & 511) == 0 && k != 0)
          w = {std::cos(ang * static_cast<double>(k)), std::sin(ang * static_cast<double>(k))};
        const std::complex<double> u = a[i + k];
        const std::complex<double> t = a[i + k + half] * w;
        a[i + k] = u + t;
        a[i + k + half] = u - t;
        w *= step;
      }
    }
  }
}

}  // namespace bounce::detail
