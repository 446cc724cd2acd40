#pragma once
// Fourier transforms of weighted indicators on exact rational grids, decay
// and moment measurements, additive energy, large spectra, and log-log
// exponent fits.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pslab/common.hpp"
#include "pslab/ps_core.hpp"

namespace pslab {

// Sample points j/M on the circle, j = 0..M-1.
struct FrequencyGrid {
    std::int64_t M;
    int oversample;

    explicit FrequencyGrid(std::int64_t m, int k = 1);

    // M = K*(N+1), the default oversampled grid for cap N
    static FrequencyGrid for_cap(std::int64_t n, int k);
};

// Least-squares fit of log y against log x.
struct ExponentFit {
    double slope;
    double intercept;
    double r_squared;
    std::vector<std::pair<double, double>> points;  // (log x, log y)
};

struct DecaySample {
    std::int64_t N;
    std::int64_t M;
    double value;         // max over the grid of |nu_hat - 1_hat|
    std::int64_t argmax_j;
    double argmax_alpha;  // argmax_j / M
};

struct RestrictionRow {
    double delta;
    double measure;      // fraction of grid points with |f_hat| > delta*N
    double normalized;   // measure * delta^t * N
};

struct RestrictionProfile {
    double t;
    std::vector<RestrictionRow> rows;
    double c_fit;  // max of the normalized column
};

namespace spectral {

// Phasors e(k/M) with the upper half conjugate-reflected from the lower,
// so table[M-k] == conj(table[k]) holds bit-exactly.
class PhasorTable {
public:
    explicit PhasorTable(std::int64_t m);
    std::int64_t M() const { return m_; }
    const cplx& operator[](std::int64_t k) const { return w_[std::size_t(k)]; }
    const std::vector<cplx>& data() const { return w_; }

private:
    std::int64_t m_;
    std::vector<cplx> w_;
};

// f_hat(alpha) = sum_n f(n) e(n*alpha); alpha reduced mod 1 in double.
cplx transform_at(const WeightedIndicator& f, double alpha);

// f_hat on the grid j/M with phases indexed as e(((n*j) mod M)/M) in exact
// integer arithmetic.  Output satisfies out[M-j] == conj(out[j]) exactly.
std::vector<cplx> transform_grid(const WeightedIndicator& f, const FrequencyGrid& grid);

// Geometric closed form for 1_[N] hat at alpha.
cplx interval_transform(std::int64_t n, double alpha);

// Same, at the rational point j/M with integer-reduced arguments.
cplx interval_transform_grid(std::int64_t n, std::int64_t j, std::int64_t m);

// Grid max of |nu_hat - 1_[N] hat| with M = K*(N+1).
DecaySample decay_sup(const PSParams& params, int oversample);

ExponentFit fit_powerlaw(std::span<const double> xs, std::span<const double> ys);

ExponentFit decay_exponent_fit(std::span<const PSParams> params_list, int oversample);

// (1/M) sum_j |f_hat(j/M)|^t; exact integral for even integer t when
// M >= t*N+1 (the integrand is a trig polynomial of degree <= t*N).
double moment_mean(const WeightedIndicator& f, double t, const FrequencyGrid& grid);

// E_c(N): quadruples of PS members with n1+n2 = n3+n4, via the pair-sum
// histogram r(s) and sum of r(s)^2.  Sum ranges wider than hist_cap are
// processed in chunks of that size.
std::uint64_t additive_energy(const PSParams& params);
std::uint64_t additive_energy_of(std::span<const std::int64_t> set,
                                 std::int64_t hist_cap = std::int64_t(1) << 26);

ExponentFit energy_exponent_fit(double c, std::span<const std::int64_t> n_list);

// Fraction of grid points with |f_hat| > delta * N  (N = f.cap()).
double large_spectrum_measure(const WeightedIndicator& f, double delta,
                              const FrequencyGrid& grid);

RestrictionProfile restriction_profile(const WeightedIndicator& f, double t,
                                       std::span<const double> deltas,
                                       const FrequencyGrid& grid);

namespace detail {
// Full-grid transform choosing between the sparse exact-index path and the
// radix-2 FFT (power-of-two M, large support); output is conjugate-
// symmetrised either way.
std::vector<cplx> grid_transform_auto(const WeightedIndicator& f, std::int64_t m);
}  // namespace detail

}  // namespace spectral
}  // namespace pslab
