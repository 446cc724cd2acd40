#include "pslab/ps_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pslab/dd_real.hpp"

namespace pslab {

PSParams::PSParams(double c_in, std::int64_t n_in) : c(c_in), N(n_in) {
    if (!(c > 1.0)) throw std::invalid_argument("PSParams: require c > 1");
    if (!std::isfinite(c)) throw std::invalid_argument("PSParams: c must be finite");
    if (N < 1 || N > (std::int64_t(1) << 62))
        throw std::invalid_argument("PSParams: require 1 <= N <= 2^62");
    gamma = 1.0 / c;
    analytic_regime = c < 2.0;
}

WeightedIndicator::WeightedIndicator(std::vector<std::int64_t> support,
                                     std::vector<double> weights, std::int64_t cap)
    : support_(std::move(support)), weights_(std::move(weights)), cap_(cap) {
    if (cap_ < 1) throw std::invalid_argument("WeightedIndicator: cap must be >= 1");
    if (support_.size() != weights_.size())
        throw std::invalid_argument("WeightedIndicator: support/weights size mismatch");
    std::int64_t prev = 0;
    for (std::int64_t n : support_) {
        if (n <= prev) throw std::invalid_argument("WeightedIndicator: support not strictly increasing");
        if (n > cap_) throw std::invalid_argument("WeightedIndicator: support exceeds cap");
        prev = n;
    }
    zero_one_ = true;
    for (double w : weights_) {
        if (!std::isfinite(w)) throw std::invalid_argument("WeightedIndicator: non-finite weight");
        if (w != 1.0) zero_one_ = false;
    }
    l1_ = chunked_sum(std::span<const double>(weights_));
}

WeightedIndicator WeightedIndicator::from_set(std::vector<std::int64_t> support,
                                              std::int64_t cap) {
    std::vector<double> w(support.size(), 1.0);
    return WeightedIndicator(std::move(support), std::move(w), cap);
}

WeightedIndicator WeightedIndicator::pow_weights(int p) const {
    if (p < 1) throw std::invalid_argument("pow_weights: p >= 1");
    if (p == 1 || zero_one_) return *this;
    std::vector<double> w(weights_);
    for (double& x : w) x = std::pow(x, double(p));
    return WeightedIndicator(support_, std::move(w), cap_);
}

namespace ps_core {
namespace {

constexpr double k_guard_band = 1e-6;   // near-integer band that triggers dd
constexpr double k_snap_abs = 1e-10;    // dd values this close to an integer are taken exact
constexpr double k_two_63 = 9223372036854775808.0;

// floor of a dd value known to lie well inside int64 range, snapping to
// the nearest integer when within k_snap_abs (covers both genuinely exact
// powers and the dd evaluation error).
std::int64_t dd_floor_snap(const dd_real& v) {
    dd_real nearest = dd::nearbyint(v);
    dd_real diff = dd::abs(dd::sub(v, nearest));
    dd_real f = dd::less(diff, dd_real(k_snap_abs)) ? nearest : dd::floor(v);
    if (!dd::less(f, dd_real(k_two_63)))
        throw std::overflow_error("floor_power: result exceeds int64 range");
    // f is integer-valued: hi is an exact double integer, lo an integer correction
    std::int64_t r = static_cast<std::int64_t>(f.hi);
    r += static_cast<std::int64_t>(f.lo);
    return r;
}

std::int64_t floor_power_dd(std::int64_t m, double c) {
    dd_real lm = dd::log(dd::from_i64(m));
    dd_real v = dd::exp(dd::mul(lm, c));
    return dd_floor_snap(v);
}

}  // namespace

std::int64_t floor_power(std::int64_t m, double c) {
    if (m < 1) throw std::invalid_argument("floor_power: m >= 1 required");
    if (!(c > 1.0) || !std::isfinite(c)) throw std::invalid_argument("floor_power: c > 1 required");
    if (m == 1) return 1;
    if (c * std::log2(double(m)) > 63.3)
        throw std::overflow_error("floor_power: result exceeds int64 range");
    double p = std::pow(double(m), c);
    // beyond ~1e8 the double pow error is no longer small against the
    // guard band, so resolve in dd unconditionally
    if (p < 1e8) {
        double frac = p - std::floor(p);
        if (frac > k_guard_band && frac < 1.0 - k_guard_band)
            return static_cast<std::int64_t>(p);
    }
    return floor_power_dd(m, c);
}

std::int64_t floor_minus_phi(std::int64_t n, const PSParams& params) {
    if (n < 1) throw std::invalid_argument("floor_minus_phi: n >= 1 required");
    double phi = std::pow(double(n), params.gamma);
    double frac = phi - std::floor(phi);
    if (phi < 1e8 && frac > k_guard_band && frac < 1.0 - k_guard_band)
        return -static_cast<std::int64_t>(std::floor(phi)) - 1;
    // phi(n) is near the integer m: phi(n) <= m  iff  n <= m^c
    std::int64_t m = std::llround(phi);
    if (m < 1) m = 1;
    return n <= floor_power(m, params.c) ? -m : -m - 1;
}

std::vector<std::int64_t> members(const PSParams& params) {
    std::vector<std::int64_t> out;
    // |PS_c(N)| ~ N^(1/c)
    out.reserve(std::size_t(std::pow(double(params.N), params.gamma)) + 2);
    std::int64_t prev = 0;
    for (std::int64_t m = 1;; ++m) {
        std::int64_t v;
        try {
            v = floor_power(m, params.c);
        } catch (const std::overflow_error&) {
            break;  // m^c beyond int64 certainly exceeds N
        }
        if (v > params.N) break;
        if (v <= prev) throw invariant_violation("members: sequence not strictly increasing",
                                                 {{"m", std::to_string(m)}});
        out.push_back(v);
        prev = v;
    }
    return out;
}

bool is_member(std::int64_t n, const PSParams& params) {
    if (n < 1 || n > params.N) throw std::invalid_argument("is_member: 1 <= n <= N required");
    return floor_minus_phi(n, params) - floor_minus_phi(n + 1, params) == 1;
}

double weight_formula(std::int64_t n, const PSParams& params) {
    return params.c * std::pow(double(n), 1.0 - params.gamma);
}

double weight(std::int64_t n, const PSParams& params) {
    return is_member(n, params) ? weight_formula(n, params) : 0.0;
}

WeightedIndicator nu_vector(const PSParams& params) {
    std::vector<std::int64_t> supp = members(params);
    std::vector<double> w(supp.size());
    for (std::size_t i = 0; i < supp.size(); ++i) w[i] = weight_formula(supp[i], params);
    return WeightedIndicator(std::move(supp), std::move(w), params.N);
}

}  // namespace ps_core
}  // namespace pslab
