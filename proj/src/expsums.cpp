#include "pslab/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pslab/spectral.hpp"

namespace pslab {
namespace expsums {

namespace {
constexpr double k_pi = 3.14159265358979323846264338328;

// psi(-phi(n)) with the floor side decided exactly (floor_minus_phi routes
// near-integer phi through the floor_power guard).
double psi_minus_phi(std::int64_t n, const PSParams& params) {
    double phi = std::pow(double(n), params.gamma);
    return -phi - double(ps_core::floor_minus_phi(n, params)) - 0.5;
}

// (psi(-phi(n+1)) - psi(-phi(n))) / phi'(n)
double block_coefficient(std::int64_t n, const PSParams& params) {
    return (psi_minus_phi(n + 1, params) - psi_minus_phi(n, params)) *
           ps_core::weight_formula(n, params);
}

}  // namespace

double sawtooth(double x) { return x - std::floor(x) - 0.5; }

SawtoothPartial sawtooth_partial(double t, std::int64_t m_terms) {
    if (m_terms < 1) throw std::invalid_argument("sawtooth_partial: M >= 1 required");
    // incremental rotation e(m t) = e((m-1) t) * e(t)
    cplx rot = unit_phase(t);
    cplx cur = rot;
    double value = 0.0;
    for (std::int64_t m = 1; m <= m_terms; ++m) {
        value -= cur.imag() / (k_pi * double(m));
        cur *= rot;
    }
    return {value, std::abs(sawtooth(t) - value)};
}

cplx dyadic_block(double p, double alpha, const PSParams& params) {
    if (!params.analytic_regime)
        throw std::invalid_argument("dyadic_block: analytic regime 1 < c < 2 required");
    if (!(p > 0.0)) throw std::invalid_argument("dyadic_block: P > 0 required");
    std::int64_t first = std::int64_t(std::floor(p)) + 1;
    std::int64_t last = std::int64_t(std::floor(2.0 * p));
    cplx total = 0.0;
    for (std::int64_t n = first; n <= last; ++n)
        total += block_coefficient(n, params) * unit_phase(double(n) * alpha);
    return total;
}

double residual_bound_value(const PSParams& params) {
    return (params.c - 1.0) / (2.0 * params.c) * (1.0 + std::log(double(params.N))) + params.c;
}

DyadicDecomposition reconstruct_difference(double alpha, const PSParams& params) {
    if (!params.analytic_regime)
        throw std::invalid_argument("reconstruct_difference: analytic regime required");
    DyadicDecomposition out{params, alpha, {}, 0.0, 0.0, residual_bound_value(params), 0.0, true};

    int k_max = 0;
    while ((params.N >> (k_max + 1)) >= 1) ++k_max;  // k_max = floor(log2 N)
    cplx block_sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        double p = double(params.N) / double(std::int64_t(1) << k);
        cplx v = dyadic_block(p, alpha, params);
        out.blocks.push_back({p, v});
        block_sum += v;
    }
    out.reconstructed = block_sum;

    cplx nu_hat = spectral::transform_at(ps_core::nu_vector(params), alpha);
    out.direct_difference = nu_hat - spectral::interval_transform(params.N, alpha);
    out.deviation = std::abs(out.direct_difference - out.reconstructed);
    out.within_bound = out.deviation <= out.residual_bound;
    return out;
}

DyadicDecomposition reconstruct_difference_checked(double alpha, const PSParams& params) {
    DyadicDecomposition d = reconstruct_difference(alpha, params);
    if (!d.within_bound)
        throw invariant_violation(
            "dyadic reconstruction residual exceeds Taylor bound",
            {{"c", format_real(params.c)},
             {"N", std::to_string(params.N)},
             {"alpha", format_real(alpha)},
             {"deviation", format_real(d.deviation)},
             {"residual_bound", format_real(d.residual_bound)}});
    return d;
}

cplx phase_sum(double p, double x, std::int64_t m, double alpha, const PSParams& params) {
    if (!(p > 0.0)) throw std::invalid_argument("phase_sum: P > 0 required");
    if (x > 2.0 * p + 0.5) throw std::invalid_argument("phase_sum: x <= 2P required");
    std::int64_t first = std::int64_t(std::floor(p)) + 1;
    std::int64_t last = std::int64_t(std::floor(x));
    cplx total = 0.0;
    for (std::int64_t n = first; n <= last; ++n) {
        double phase = double(n) * alpha + double(m) * std::pow(double(n), params.gamma);
        total += unit_phase(phase);
    }
    return total;
}

AuditTable audit_bounds(const PSParams& params, std::span<const double> p_values,
                        std::int64_t m_max, std::span<const double> alphas) {
    if (!(params.gamma > 0.5 && params.gamma < 1.0))
        throw std::invalid_argument("audit_bounds: require 1/2 < gamma < 1");
    AuditTable table{{},
                     0.0,
                     0.0,
                     0.0,
                     0};
    const double gamma = params.gamma;
    const double c = params.c;

    auto push = [&](std::string family, double p, std::int64_t m, double value, double bound,
                    double& c_fit) {
        double ratio = value / bound;
        if (!std::isfinite(value) || !std::isfinite(bound) || !std::isfinite(ratio))
            ++table.nonfinite_rows;
        else
            c_fit = std::max(c_fit, ratio);
        table.rows.push_back({std::move(family), p, m, value, bound, ratio});
    };

    for (double p : p_values) {
        std::int64_t first = std::int64_t(std::floor(p)) + 1;
        std::int64_t last = std::int64_t(std::floor(2.0 * p));
        std::size_t count = std::size_t(std::max<std::int64_t>(0, last - first + 1));

        // T_m for m = 0..m_max by incremental phasor rotation; T_{-m} = conj(T_m)
        std::vector<cplx> cur(count, cplx(1.0));
        std::vector<cplx> step(count);
        for (std::size_t i = 0; i < count; ++i)
            step[i] = unit_phase(std::pow(double(first + std::int64_t(i)), gamma));

        for (std::int64_t m = 0; m <= m_max; ++m) {
            double t_abs = std::abs(chunked_sum(std::span<const cplx>(cur)));
            double am = double(m);
            double phase_bound =
                m == 0 ? p
                       : std::min(p, std::pow(p, 1.0 - gamma) / am +
                                         std::sqrt(am * std::pow(p, gamma)));
            push("phase", p, m, t_abs, phase_bound, table.c_fit_phase);
            if (m > 0) {
                push("phase", p, -m, t_abs, phase_bound, table.c_fit_phase);
                double vdc_bound = std::sqrt(am) * std::pow(p, 0.5 / c) +
                                   std::pow(p, 1.0 - 0.5 / c) / std::sqrt(am);
                push("vdc", p, m, t_abs, vdc_bound, table.c_fit_vdc);
                push("vdc", p, -m, t_abs, vdc_bound, table.c_fit_vdc);
            }
            if (m < m_max)
                for (std::size_t i = 0; i < count; ++i) cur[i] *= step[i];
        }

        double block_bound = std::pow(p, 1.2 - 0.4 * gamma);
        for (double a : alphas)
            push("block", p, 0, std::abs(dyadic_block(p, a, params)), block_bound,
                 table.c_fit_block);
    }
    return table;
}

}  // namespace expsums
}  // namespace pslab
