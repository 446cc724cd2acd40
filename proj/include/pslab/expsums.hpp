#pragma once
// Saw-tooth machinery behind the decay estimate: psi(x) = x - floor(x) - 1/2,
// its trigonometric truncation, dyadic block sums S(P; alpha), phase sums
// T_m / U_m, and numerical audits of the block and phase-sum bounds.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pslab/common.hpp"
#include "pslab/ps_core.hpp"

namespace pslab {

struct DyadicBlockEntry {
    double P;
    cplx value;  // S(P; alpha)
};

// Result of reconstructing nu_hat - 1_[N] hat from dyadic blocks.  The
// deviation |difference - sum of blocks| is provably at most
// residual_bound = ((c-1)/(2c))(1 + ln N) + c  (termwise Taylor remainder
// plus the uncovered n = 1 term).
struct DyadicDecomposition {
    PSParams params;
    double alpha;
    std::vector<DyadicBlockEntry> blocks;
    cplx reconstructed;       // sum of block values
    cplx direct_difference;   // nu_hat(alpha) - 1_[N] hat(alpha)
    double residual_bound;
    double deviation;
    bool within_bound;
};

struct SawtoothPartial {
    double value;             // truncated series at t
    double truncation_error;  // |psi(t) - value|
};

struct AuditRow {
    std::string family;  // "phase" | "vdc" | "block"
    double P;
    std::int64_t m;
    double value;
    double bound;
    double ratio;
};

struct AuditTable {
    std::vector<AuditRow> rows;
    double c_fit_phase;  // max ratio over the min{P, ...} phase-sum family
    double c_fit_vdc;    // max ratio over the van der Corput family
    double c_fit_block;  // max ratio over the block-sum family
    std::int64_t nonfinite_rows;
};

namespace expsums {

// psi(x) = x - floor(x) - 1/2, in [-1/2, 1/2); psi(k) = -1/2 at integers.
double sawtooth(double x);

// Truncation sum_{0<|m|<=M} e(-mt)/(2 pi i m) = -sum_{m<=M} sin(2 pi m t)/(pi m),
// the partial Fourier series of psi.
SawtoothPartial sawtooth_partial(double t, std::int64_t m_terms);

// S(P; alpha) = sum_{P<n<=2P} (psi(-phi(n+1)) - psi(-phi(n)))/phi'(n) e(n alpha).
cplx dyadic_block(double p, double alpha, const PSParams& params);

DyadicDecomposition reconstruct_difference(double alpha, const PSParams& params);

// Throwing wrapper: raises invariant_violation when the residual bound is
// breached (the CLI maps that to exit code 2).
DyadicDecomposition reconstruct_difference_checked(double alpha, const PSParams& params);

// U_m(x) = sum_{P<n<=x} e(n alpha + m phi(n)); T_m(P) = U_m(2P) at alpha = 0.
cplx phase_sum(double p, double x, std::int64_t m, double alpha, const PSParams& params);

// Ratio audit of |T_m| against min{P, P^(1-gamma)/|m| + (|m| P^gamma)^(1/2)}
// and against |m|^(1/2) P^(1/(2c)) + P^(1-1/(2c)) |m|^(-1/2), plus
// |S(P;alpha)| against P^(6/5 - 2 gamma/5).
AuditTable audit_bounds(const PSParams& params, std::span<const double> p_values,
                        std::int64_t m_max, std::span<const double> alphas);

double residual_bound_value(const PSParams& params);

}  // namespace expsums
}  // namespace pslab
