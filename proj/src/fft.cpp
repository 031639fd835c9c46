#include "specav/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace specav {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_inplace(std::vector<std::complex<double>>& data, int sign) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft: size must be a power of two");
  if (sign != 1 && sign != -1) throw std::invalid_argument("fft: sign must be +-1");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = sign * 2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

void fft2_inplace(std::vector<std::complex<double>>& data, std::size_t rows,
                  std::size_t cols, int sign) {
  if (data.size() != rows * cols)
    throw std::invalid_argument("fft2: data size does not match rows*cols");
  std::vector<std::complex<double>> scratch;
  scratch.resize(std::max(rows, cols));
  for (std::size_t r = 0; r < rows; ++r) {
    scratch.assign(data.begin() + static_cast<std::ptrdiff_t>(r * cols),
                   data.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols));
    fft_inplace(scratch, sign);
    std::copy(scratch.begin(), scratch.end(),
              data.begin() + static_cast<std::ptrdiff_t>(r * cols));
  }
  for (std::size_t c = 0; c < cols; ++c) {
    scratch.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) scratch[r] = data[r * cols + c];
    fft_inplace(scratch, sign);
    for (std::size_t r = 0; r < rows; ++r) data[r * cols + c] = scratch[r];
  }
}

}  // namespace specav
