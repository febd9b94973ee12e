#pragma once

#include <complex>
#include <vector>

namespace bounce::detail {

bool is_pow2(std::size_t n);

// In-place radix-2 FFT, unnormalized: sign = -1 computes
// X_k = sum_j x_j exp(-2 pi i j k / n), sign = +1 the conjugate kernel.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

}  // namespace bounce::detail
