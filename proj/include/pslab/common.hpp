#pragma once
// Shared plumbing: error types, deterministic chunked summation, the
// seeded generator used by colouring schemes, and a fixed-chunk parallel
// loop whose results are bit-identical for any worker count.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace pslab {

using cplx = std::complex<double>;

// Raised when an exact-identity or theorem-backed assertion fails at run
// time.  Carries a machine-readable record so the CLI can emit it as JSON
// before exiting with status 2.
class invariant_violation : public std::runtime_error {
public:
    using field_list = std::vector<std::pair<std::string, std::string>>;

    invariant_violation(std::string what_arg, field_list fields)
        : std::runtime_error(std::move(what_arg)), fields_(std::move(fields)) {}

    const field_list& fields() const { return fields_; }

    std::string to_json() const {
        std::string out = "{\"violation\":\"";
        append_escaped(out, what());
        for (const auto& [k, v] : fields_) {
            out += "\",\"";
            append_escaped(out, k);
            out += "\":\"";
            append_escaped(out, v);
        }
        out += "\"}";
        return out;
    }

private:
    static void append_escaped(std::string& out, const std::string& s) {
        for (char ch : s) {
            if (ch == '"' || ch == '\\') out.push_back('\\');
            out.push_back(ch);
        }
    }

    field_list fields_;
};

class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Worker cap shared by all data-parallel loops.  0 means "hardware".
int thread_limit();
void set_thread_limit(int n);

// Runs fn(lo, hi) over [0, n) in fixed chunks.  Chunk boundaries do not
// depend on the worker count, so any reduction that combines per-chunk
// results in chunk order is deterministic.
void parallel_chunks(std::int64_t n, std::int64_t chunk,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

inline constexpr std::int64_t k_sum_chunk = 4096;

// Sum with fixed 4096-element chunk boundaries: per-chunk partials are
// accumulated in index order, then combined in chunk order.
template <typename T>
T chunked_sum(std::span<const T> v) {
    T total{};
    for (std::size_t base = 0; base < v.size(); base += k_sum_chunk) {
        std::size_t end = std::min(v.size(), base + std::size_t(k_sum_chunk));
        T part{};
        for (std::size_t i = base; i < end; ++i) part += v[i];
        total += part;
    }
    return total;
}

// e(t) = exp(2*pi*i*t) with the argument reduced to [0,1) first.
inline cplx unit_phase(double t) {
    double r = t - std::floor(t);
    double a = 6.283185307179586476925287 * r;
    return {std::cos(a), std::sin(a)};
}

// SplitMix64.  This exact sequence is a reproducibility contract for the
// random colouring scheme; do not change it without a major version bump.
struct splitmix64 {
    std::uint64_t state;

    explicit splitmix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n) by modulo; bias is < n / 2^64
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    double unit() { return double(next() >> 11) * 0x1.0p-53; }
};

std::string format_real(double x);  // 12 significant digits

}  // namespace pslab
