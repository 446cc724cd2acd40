#pragma once
// Piatetski-Shapiro sets PS_c(N) = { floor(m^c) : m >= 1 } ∩ [1, N] and
// the normalising weight nu(n) = c * n^(1 - 1/c) on members.

#include <cstdint>
#include <span>
#include <vector>

#include "pslab/common.hpp"

namespace pslab {

// The pair (c, N) configuring every computation; gamma = 1/c is cached.
struct PSParams {
    double c;
    std::int64_t N;
    double gamma;
    bool analytic_regime;  // 1 < c < 2, required by the theory-backed ops

    PSParams(double c_in, std::int64_t n_in);
};

// A finitely supported real-valued function on [1, N], stored sparsely:
// support is strictly increasing, weights run parallel to it.  Houses the
// canonical nu, colour-class restrictions, and any majorised psi.
class WeightedIndicator {
public:
    WeightedIndicator(std::vector<std::int64_t> support, std::vector<double> weights,
                      std::int64_t cap);

    static WeightedIndicator from_set(std::vector<std::int64_t> support, std::int64_t cap);

    const std::vector<std::int64_t>& support() const { return support_; }
    const std::vector<double>& weights() const { return weights_; }
    std::int64_t cap() const { return cap_; }
    double l1() const { return l1_; }
    std::size_t size() const { return support_.size(); }
    bool is_zero_one() const { return zero_one_; }

    // pointwise power (w -> w^p), same support
    WeightedIndicator pow_weights(int p) const;

private:
    std::vector<std::int64_t> support_;
    std::vector<double> weights_;
    std::int64_t cap_;
    double l1_;
    bool zero_one_;
};

namespace ps_core {

// floor(m^c), exact.  Double evaluation with a near-integer guard: when
// the computed fractional part is within 1e-6 of 0 or 1 (or the value is
// too large for the double grid to resolve integers), the power is
// re-evaluated in double-double (~31 digits) before flooring.
std::int64_t floor_power(std::int64_t m, double c);

// floor(-phi(n)) with phi(n) = n^(1/c), sharing floor_power's guard: near
// an integer m the side of phi(n) vs m is decided by comparing n with
// floor(m^c) in integer arithmetic.
std::int64_t floor_minus_phi(std::int64_t n, const PSParams& params);

// The strictly increasing sequence {floor(m^c)} ∩ [1, N].
std::vector<std::int64_t> members(const PSParams& params);

// Membership via the floor identity 1_PS(n) = floor(-phi(n)) - floor(-phi(n+1)).
bool is_member(std::int64_t n, const PSParams& params);

// nu(n) = c * n^(1-1/c) on members, 0 otherwise.
double weight(std::int64_t n, const PSParams& params);

// Weight formula without the membership test (valid for any n >= 1).
double weight_formula(std::int64_t n, const PSParams& params);

// The canonical nu as a sparse indicator; l1 ~ N.
WeightedIndicator nu_vector(const PSParams& params);

}  // namespace ps_core
}  // namespace pslab
