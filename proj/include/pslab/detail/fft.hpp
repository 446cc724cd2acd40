#pragma once
// Iterative radix-2 FFT evaluating X_j = sum_n x_n e(+nj/M) for M a power
// of two.  Twiddles are read from a shared quarter-wave-exact phasor table
// (index stride M/len per stage).

#include <complex>
#include <cstdint>
#include <vector>

namespace pslab::detail {

bool is_pow2(std::int64_t m);

// In-place forward transform with the e(+nj/M) sign convention.
// table must hold e(k/M) for k = 0..M-1 (conjugate-reflected halves).
void fft_pow2(std::vector<std::complex<double>>& data,
              const std::vector<std::complex<double>>& table);

}  // namespace pslab::detail
