#pragma once
// Linear-form bookkeeping: the Rado condition, the c*(s)/c-dagger(s)
// thresholds, admissible-exponent witnesses, exact solution counting
// T(F_1,...,F_s) via spectral means on rational grids, distinct-coordinate
// counts via Moebius inversion over set partitions, and the density
// transfer inequality.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pslab/common.hpp"
#include "pslab/ps_core.hpp"

namespace pslab {

// Coefficient vector (c_1,...,c_s) of non-zero integers for c.x = 0.
struct LinearForm {
    std::vector<std::int64_t> coeffs;

    explicit LinearForm(std::vector<std::int64_t> cs);

    int arity() const { return int(coeffs.size()); }
    std::int64_t degree_bound(std::int64_t n) const;  // sum |c_i| * N
};

struct ThresholdPair {
    int s;
    std::int64_t star_num, star_den;      // c*(s) = (2s+6)/(s+8), reduced
    std::int64_t dagger_num, dagger_den;  // c*(s) for s in {3,4}, else 2
    double c_star() const { return double(star_num) / double(star_den); }
    double c_dagger() const { return double(dagger_num) / double(dagger_den); }
};

enum class ExponentRoute { small_s, large_s };

// Witness (chi, t0, t) for the restriction estimate: chi = 2(1-1/c)/(t0-2)
// with s-1 < t0 < t < s on the small-s route, t0 = 4 and
// t in (max(4, s-1), s) on the large-s route.
struct AdmissibleExponents {
    double chi;
    double t0;
    double t;
    ExponentRoute route;
};

struct DensityCheck {
    double weighted_sum;  // sum of nu over A
    double lower_bound;   // |A|^c
    bool ok;
};

struct TrivialWeightedCount {
    double value;        // nu-weighted count over coincident solutions
    double eta;          // 2/c - 1
    double bound_scale;  // N^(s-1-eta)
};

namespace equations {

// True iff some non-empty subset of the coefficients sums to zero.
// Direct enumeration up to s = 20, meet-in-the-middle up to s = 30.
bool rado_check(const LinearForm& form);

ThresholdPair thresholds(int s);

// Canonical witness when one exists; existence iff c < c_dagger(s).
std::optional<AdmissibleExponents> admissible_exponents(int s, double c);

// T(f,...,f) = sum over c.n = 0 of prod f(n_i), evaluated as the exact
// grid mean (1/M) sum_j prod f_hat(c_i j / M).  Requires
// M >= sum|c_i|*N + 1 so the mean equals the integral.
double solution_count(const LinearForm& form, const WeightedIndicator& f, std::int64_t m);

// Ordered solutions with pairwise-distinct coordinates over a 0/1 set,
// by Moebius inversion over the partition lattice of [s] (s <= 5).
std::int64_t nontrivial_count(const LinearForm& form, std::span<const std::int64_t> set);

// nu-weighted count over K = {c.n = 0, n_i = n_j for some i != j}.
TrivialWeightedCount trivial_weighted_count(const LinearForm& form, const PSParams& params);

// sum_{n in A} nu(n) >= |A|^c for A inside PS_c(N); ok must always hold.
DensityCheck density_weight_check(std::span<const std::int64_t> a, const PSParams& params);

// Brute-force oracles (nested enumeration, s <= 4).
double enumerate_solution_count(const LinearForm& form, const WeightedIndicator& f);
std::int64_t enumerate_nontrivial_count(const LinearForm& form,
                                        std::span<const std::int64_t> set);

}  // namespace equations
}  // namespace pslab
