#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace csae {

/// In-place radix-2 FFT. Length must be a power of two.
/// inverse=true applies the conjugate transform including the 1/N scale.
void fft_inplace(std::vector<std::complex<double>>& data, bool inverse);

/// Smallest power of two >= n (n >= 1).
std::size_t next_pow2(std::size_t n);

}  // namespace csae
