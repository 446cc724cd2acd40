#include "pslab/detail/fft.hpp"

#include <stdexcept>
#include <utility>

namespace pslab::detail {

bool is_pow2(std::int64_t m) { return m > 0 && (m & (m - 1)) == 0; }

void fft_pow2(std::vector<std::complex<double>>& data,
              const std::vector<std::complex<double>>& table) {
    const std::size_t n = data.size();
    if (!is_pow2(std::int64_t(n))) throw std::invalid_argument("fft_pow2: size must be a power of two");
    if (table.size() != n) throw std::invalid_argument("fft_pow2: table size mismatch");

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t stride = n / len;
        std::size_t half = len >> 1;
        for (std::size_t base = 0; base < n; base += len) {
            std::size_t tw = 0;
            for (std::size_t k = 0; k < half; ++k, tw += stride) {
                std::complex<double> u = data[base + k];
                std::complex<double> v = data[base + k + half] * table[tw];
                data[base + k] = u + v;
                data[base + k + half] = u - v;
            }
        }
    }
}

}  // namespace pslab::detail
