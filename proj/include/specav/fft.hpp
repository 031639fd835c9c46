#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace specav {

// Iterative radix-2 transforms for power-of-two sizes. sign = -1 gives the
// forward kernel sum x_m exp(-2 pi i k m / M); sign = +1 the conjugate
// kernel. No normalization is applied in either direction.
void fft_inplace(std::vector<std::complex<double>>& data, int sign);

// Row-column transform of a rows x cols row-major array; both dimensions
// must be powers of two.
void fft2_inplace(std::vector<std::complex<double>>& data, std::size_t rows,
                  std::size_t cols, int sign);

bool is_power_of_two(std::size_t n);

}  // namespace specav
