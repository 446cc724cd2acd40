#pragma once
// Minimal double-double arithmetic: an unevaluated sum hi + lo of two
// doubles carrying ~31 significant decimal digits.  Only the operations
// needed for high-precision evaluation of m^c = exp(c*log(m)) are
// provided.  Algorithms are the classical error-free transformations
// (Dekker/Knuth two_sum, FMA-based two_prod) plus the exp/log scheme of
// the QD library (argument reduction by ln 2, scaled Taylor series,
// repeated squaring; one Newton step for log).

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace pslab {

struct dd_real {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd_real() = default;
    constexpr dd_real(double h) : hi(h), lo(0.0) {}
    constexpr dd_real(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace dd {

inline dd_real quick_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd_real two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd_real two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd_real add(const dd_real& a, const dd_real& b) {
    dd_real s = two_sum(a.hi, b.hi);
    dd_real t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd_real add(const dd_real& a, double b) {
    dd_real s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd_real neg(const dd_real& a) { return {-a.hi, -a.lo}; }

inline dd_real sub(const dd_real& a, const dd_real& b) { return add(a, neg(b)); }

inline dd_real mul(const dd_real& a, const dd_real& b) {
    dd_real p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd_real mul(const dd_real& a, double b) {
    dd_real p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd_real mul_pwr2(const dd_real& a, double b) {
    // b must be a power of two
    return {a.hi * b, a.lo * b};
}

inline dd_real div(const dd_real& a, const dd_real& b) {
    double q1 = a.hi / b.hi;
    dd_real r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    dd_real q = quick_two_sum(q1, q2);
    return add(q, q3);
}

inline bool less(const dd_real& a, const dd_real& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}

inline dd_real abs(const dd_real& a) { return a.hi < 0.0 ? neg(a) : a; }

inline dd_real from_i64(std::int64_t v) {
    double hi = static_cast<double>(v);
    // |v| < 2^62 here, so the round-trip below cannot overflow int64
    std::int64_t hi_i = static_cast<std::int64_t>(hi);
    return quick_two_sum(hi, static_cast<double>(v - hi_i));
}

// ln 2 to double-double precision
inline constexpr dd_real k_log2{6.931471805599452862e-01, 2.3190468138462995584e-17};

inline const dd_real* inv_factorials() {
    // 1/3!, 1/4!, ... computed once by exact-ish dd division
    static dd_real table[18];
    static bool init = [] {
        dd_real f(6.0);  // 3!
        for (int k = 0; k < 18; ++k) {
            table[k] = div(dd_real(1.0), f);
            f = mul(f, double(k + 4));
        }
        return true;
    }();
    (void)init;
    return table;
}

inline dd_real exp(const dd_real& a) {
    if (a.hi <= -709.0) return dd_real(0.0);
    if (a.hi >= 709.0) throw std::overflow_error("dd exp overflow");
    const double k = 512.0;
    double m = std::floor(a.hi / k_log2.hi + 0.5);
    dd_real r = mul_pwr2(sub(a, mul(k_log2, m)), 1.0 / k);

    const dd_real* inv_fact = inv_factorials();
    dd_real p = mul(r, r);
    dd_real s = add(r, mul_pwr2(p, 0.5));
    p = mul(p, r);
    dd_real t = mul(p, inv_fact[0]);
    int i = 0;
    const double thresh = 1.0 / k * 4.93e-32;
    do {
        s = add(s, t);
        p = mul(p, r);
        ++i;
        t = mul(p, inv_fact[i]);
    } while (std::abs(t.to_double()) > thresh && i < 16);
    s = add(s, t);

    for (int j = 0; j < 9; ++j) s = add(mul_pwr2(s, 2.0), mul(s, s));
    s = add(s, 1.0);
    return {std::ldexp(s.hi, int(m)), std::ldexp(s.lo, int(m))};
}

inline dd_real log(const dd_real& a) {
    if (a.hi <= 0.0) throw std::domain_error("dd log of non-positive value");
    // one Newton step x -> x + a*exp(-x) - 1 doubles the seed's precision
    dd_real x(std::log(a.hi));
    x = sub(add(x, mul(a, exp(neg(x)))), dd_real(1.0));
    return x;
}

inline dd_real floor(const dd_real& a) {
    double hi = std::floor(a.hi);
    if (hi == a.hi) {
        double lo = std::floor(a.lo);
        return quick_two_sum(hi, lo);
    }
    return {hi, 0.0};
}

inline dd_real nearbyint(const dd_real& a) {
    dd_real f = floor(a);
    dd_real frac = sub(a, f);
    if (!less(frac, dd_real(0.5))) return add(f, 1.0);
    return f;
}

}  // namespace dd
}  // namespace pslab
