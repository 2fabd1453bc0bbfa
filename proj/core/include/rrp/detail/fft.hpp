#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rrp::detail {

/// In-place iterative radix-2 FFT (forward: sign = -1, inverse: sign = +1,
/// unnormalized). Length must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

bool is_pow2(std::size_t n);

}  // namespace rrp::detail
