#include "pslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pslab/detail/fft.hpp"

namespace pslab {

FrequencyGrid::FrequencyGrid(std::int64_t m, int k) : M(m), oversample(k) {
    if (m < 1) throw std::invalid_argument("FrequencyGrid: M >= 1 required");
    if (m > (std::int64_t(1) << 31)) throw resource_error("FrequencyGrid: M too large");
    if (k < 1) throw std::invalid_argument("FrequencyGrid: oversample >= 1 required");
}

FrequencyGrid FrequencyGrid::for_cap(std::int64_t n, int k) {
    return FrequencyGrid(std::int64_t(k) * (n + 1), k);
}

namespace spectral {

namespace {
constexpr double k_pi = 3.14159265358979323846264338328;
constexpr double k_two_pi = 6.28318530717958647692528676656;
}  // namespace

PhasorTable::PhasorTable(std::int64_t m) : m_(m), w_(std::size_t(m)) {
    if (m < 1) throw std::invalid_argument("PhasorTable: M >= 1 required");
    std::int64_t half = m / 2;
    for (std::int64_t k = 0; k <= half; ++k) {
        double a = k_two_pi * (double(k) / double(m));
        w_[std::size_t(k)] = {std::cos(a), std::sin(a)};
    }
    w_[0] = {1.0, 0.0};
    if (m % 2 == 0 && m >= 2) w_[std::size_t(half)] = {-1.0, 0.0};  // e(1/2) exactly
    for (std::int64_t k = half + 1; k < m; ++k)
        w_[std::size_t(k)] = std::conj(w_[std::size_t(m - k)]);
}

cplx transform_at(const WeightedIndicator& f, double alpha) {
    double a = alpha - std::floor(alpha);
    const auto& supp = f.support();
    const auto& w = f.weights();
    cplx total = 0.0;
    for (std::size_t base = 0; base < supp.size(); base += std::size_t(k_sum_chunk)) {
        std::size_t end = std::min(supp.size(), base + std::size_t(k_sum_chunk));
        cplx part = 0.0;
        for (std::size_t i = base; i < end; ++i)
            part += w[i] * unit_phase(double(supp[i]) * a);
        total += part;
    }
    return total;
}

std::vector<cplx> transform_grid(const WeightedIndicator& f, const FrequencyGrid& grid) {
    const std::int64_t m = grid.M;
    if (m < f.cap() + 1)
        throw std::invalid_argument("transform_grid: require M >= N+1");
    PhasorTable tab(m);

    const auto& supp = f.support();
    const auto& w = f.weights();
    const std::size_t s = supp.size();
    std::vector<std::int64_t> red(s);
    for (std::size_t i = 0; i < s; ++i) red[i] = supp[i] % m;

    std::vector<cplx> out(std::size_t(m), cplx(0.0));
    const std::int64_t half = m / 2;

    // per-j values are independent; chunk over j for cache locality
    parallel_chunks(half + 1, 4096, [&](std::int64_t lo, std::int64_t hi) {
        for (std::size_t i = 0; i < s; ++i) {
            const std::int64_t step = red[i];
            const cplx wi = w[i];
            std::int64_t idx = (step * lo) % m;
            for (std::int64_t j = lo; j < hi; ++j) {
                out[std::size_t(j)] += wi * tab[idx];
                idx += step;
                if (idx >= m) idx -= m;
            }
        }
    });

    for (std::int64_t j = 1; j < m - half; ++j)
        out[std::size_t(m - j)] = std::conj(out[std::size_t(j)]);
    return out;
}

cplx interval_transform(std::int64_t n, double alpha) {
    if (n < 1) throw std::invalid_argument("interval_transform: N >= 1 required");
    double a = alpha - std::floor(alpha);
    if (a == 0.0) return cplx(double(n), 0.0);
    // sum_{k<=N} e(k a) = e((N+1)a/2) * sin(pi N a) / sin(pi a)
    double na = std::fmod(double(n) * a, 2.0);
    double n1a = std::fmod(double(n + 1) * a, 2.0);
    double ratio = std::sin(k_pi * na) / std::sin(k_pi * a);
    return cplx(std::cos(k_pi * n1a), std::sin(k_pi * n1a)) * ratio;
}

cplx interval_transform_grid(std::int64_t n, std::int64_t j, std::int64_t m) {
    std::int64_t jr = ((j % m) + m) % m;
    if (jr == 0) return cplx(double(n), 0.0);
    std::int64_t na = (n % (2 * m)) * jr % (2 * m);
    std::int64_t n1a = ((n + 1) % (2 * m)) * jr % (2 * m);
    double ratio = std::sin(k_pi * double(na) / double(m)) / std::sin(k_pi * double(jr) / double(m));
    double ang = k_pi * double(n1a) / double(m);
    return cplx(std::cos(ang), std::sin(ang)) * ratio;
}

DecaySample decay_sup(const PSParams& params, int oversample) {
    if (!params.analytic_regime)
        throw std::invalid_argument("decay_sup: analytic regime 1 < c < 2 required");
    if (oversample < 2) throw std::invalid_argument("decay_sup: oversample >= 2 required");
    FrequencyGrid grid = FrequencyGrid::for_cap(params.N, oversample);
    std::vector<cplx> nu_hat = transform_grid(ps_core::nu_vector(params), grid);
    const std::int64_t m = grid.M;
    const std::int64_t half = m / 2;

    // |diff(M-j)| == |diff(j)| by conjugate symmetry of both transforms
    double best = -1.0;
    std::int64_t best_j = 0;
    for (std::int64_t j = 0; j <= half; ++j) {
        double d = std::abs(nu_hat[std::size_t(j)] - interval_transform_grid(params.N, j, m));
        if (d > best) {
            best = d;
            best_j = j;
        }
    }
    return {params.N, m, best, best_j, double(best_j) / double(m)};
}

ExponentFit fit_powerlaw(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_powerlaw: size mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fit_powerlaw: need at least 3 points");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_powerlaw: points must be positive");
        pts.emplace_back(std::log(xs[i]), std::log(ys[i]));
    }
    double mx = 0.0, my = 0.0;
    for (auto& [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= double(pts.size());
    my /= double(pts.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_powerlaw: degenerate fit (identical x)");
    double slope = sxy / sxx;
    double intercept = my - slope * mx;
    double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    r2 = std::clamp(r2, 0.0, 1.0);
    return {slope, intercept, r2, std::move(pts)};
}

ExponentFit decay_exponent_fit(std::span<const PSParams> params_list, int oversample) {
    if (params_list.size() < 4)
        throw std::invalid_argument("decay_exponent_fit: need >= 4 values of N");
    std::vector<double> xs, ys;
    std::int64_t n_min = params_list.front().N, n_max = n_min;
    for (const PSParams& p : params_list) {
        n_min = std::min(n_min, p.N);
        n_max = std::max(n_max, p.N);
        DecaySample s = decay_sup(p, oversample);
        xs.push_back(double(p.N));
        ys.push_back(s.value);
    }
    if (n_max < 4 * n_min)
        throw std::invalid_argument("decay_exponent_fit: N values must span >= 2 octaves");
    return fit_powerlaw(xs, ys);
}

double moment_mean(const WeightedIndicator& f, double t, const FrequencyGrid& grid) {
    if (t < 1.0) throw std::invalid_argument("moment_mean: t >= 1 required");
    std::vector<cplx> g = transform_grid(f, grid);
    const std::int64_t m = grid.M;
    const std::int64_t half = m / 2;
    auto amp = [&](std::int64_t j) {
        double nrm = std::norm(g[std::size_t(j)]);
        if (t == 2.0) return nrm;
        if (t == 4.0) return nrm * nrm;
        return std::pow(nrm, 0.5 * t);
    };
    // fold conjugate pairs: |f_hat(M-j)| == |f_hat(j)| exactly
    std::vector<double> terms;
    terms.reserve(std::size_t(half) + 1);
    terms.push_back(amp(0));
    for (std::int64_t j = 1; j < (m + 1) / 2; ++j) terms.push_back(2.0 * amp(j));
    if (m % 2 == 0) terms.push_back(amp(half));
    return chunked_sum(std::span<const double>(terms)) / double(m);
}

namespace {

std::uint64_t energy_from_hist(std::span<const std::int64_t> set, std::int64_t lo,
                               std::int64_t hi, std::vector<std::uint32_t>& hist) {
    // counts pair sums in [lo, hi) and returns sum of squared counts
    std::fill(hist.begin(), hist.end(), 0u);
    for (std::size_t i = 0; i < set.size(); ++i) {
        std::int64_t a = set[i];
        // b range with lo <= a+b < hi
        auto first = std::lower_bound(set.begin(), set.end(), lo - a);
        auto last = std::lower_bound(set.begin(), set.end(), hi - a);
        for (auto it = first; it != last; ++it) ++hist[std::size_t(a + *it - lo)];
    }
    std::uint64_t e = 0;
    std::size_t len = std::size_t(hi - lo);
    for (std::size_t k = 0; k < len; ++k) e += std::uint64_t(hist[k]) * hist[k];
    return e;
}

}  // namespace

std::uint64_t additive_energy_of(std::span<const std::int64_t> set, std::int64_t hist_cap) {
    if (set.empty()) return 0;
    if (hist_cap < 1) throw std::invalid_argument("additive_energy: hist_cap >= 1");
    for (std::size_t i = 1; i < set.size(); ++i)
        if (set[i] <= set[i - 1])
            throw std::invalid_argument("additive_energy: set must be strictly increasing");
    std::int64_t lo = 2 * set.front(), hi = 2 * set.back() + 1;
    std::int64_t span = hi - lo;
    if (span > (std::int64_t(1) << 40))
        throw resource_error("additive_energy: sum range too large");
    // chunk the histogram when the sum range exceeds the memory cap
    std::int64_t chunk = std::min(span, hist_cap);
    std::vector<std::uint32_t> hist(static_cast<std::size_t>(chunk));
    std::uint64_t total = 0;
    for (std::int64_t base = lo; base < hi; base += chunk)
        total += energy_from_hist(set, base, std::min(hi, base + chunk), hist);
    return total;
}

std::uint64_t additive_energy(const PSParams& params) {
    std::vector<std::int64_t> set = ps_core::members(params);
    return additive_energy_of(set);
}

ExponentFit energy_exponent_fit(double c, std::span<const std::int64_t> n_list) {
    if (n_list.size() < 4)
        throw std::invalid_argument("energy_exponent_fit: need >= 4 values of N");
    std::int64_t n_min = n_list.front(), n_max = n_min;
    std::vector<double> xs, ys;
    for (std::int64_t n : n_list) {
        n_min = std::min(n_min, n);
        n_max = std::max(n_max, n);
        xs.push_back(double(n));
        ys.push_back(double(additive_energy(PSParams(c, n))));
    }
    if (n_max < 4 * n_min)
        throw std::invalid_argument("energy_exponent_fit: N values must span >= 2 octaves");
    return fit_powerlaw(xs, ys);
}

double large_spectrum_measure(const WeightedIndicator& f, double delta,
                              const FrequencyGrid& grid) {
    if (!(delta > 0.0) || delta > 1.0)
        throw std::invalid_argument("large_spectrum_measure: delta in (0,1] required");
    std::vector<cplx> g = transform_grid(f, grid);
    const std::int64_t m = grid.M;
    const std::int64_t half = m / 2;
    const double thr = std::norm(cplx(delta * double(f.cap())));
    std::int64_t count = std::norm(g[0]) > thr ? 1 : 0;
    for (std::int64_t j = 1; j < (m + 1) / 2; ++j)
        if (std::norm(g[std::size_t(j)]) > thr) count += 2;
    if (m % 2 == 0 && std::norm(g[std::size_t(half)]) > thr) count += 1;
    return double(count) / double(m);
}

RestrictionProfile restriction_profile(const WeightedIndicator& f, double t,
                                       std::span<const double> deltas,
                                       const FrequencyGrid& grid) {
    if (deltas.size() < 4)
        throw std::invalid_argument("restriction_profile: need >= 4 delta values");
    RestrictionProfile prof;
    prof.t = t;
    prof.c_fit = 0.0;
    for (double d : deltas) {
        double meas = large_spectrum_measure(f, d, grid);
        double normalized = meas * std::pow(d, t) * double(f.cap());
        prof.rows.push_back({d, meas, normalized});
        prof.c_fit = std::max(prof.c_fit, normalized);
    }
    return prof;
}

namespace detail {

std::vector<cplx> grid_transform_auto(const WeightedIndicator& f, std::int64_t m) {
    if (m < f.cap() + 1) throw std::invalid_argument("grid_transform_auto: M >= N+1 required");
    const bool pow2 = pslab::detail::is_pow2(m);
    const double sparse_cost = double(f.size()) * double(m / 2 + 1);
    const double fft_cost = 16.0 * double(m) * std::log2(double(m));
    if (!pow2 || sparse_cost <= fft_cost)
        return transform_grid(f, FrequencyGrid(m));

    PhasorTable tab(m);
    std::vector<cplx> data(std::size_t(m), cplx(0.0));
    const auto& supp = f.support();
    const auto& w = f.weights();
    for (std::size_t i = 0; i < supp.size(); ++i)
        data[std::size_t(supp[i] % m)] += w[i];
    pslab::detail::fft_pow2(data, tab.data());
    // restore exact conjugate symmetry (real input)
    for (std::int64_t j = 1; j < m - m / 2; ++j)
        data[std::size_t(m - j)] = std::conj(data[std::size_t(j)]);
    return data;
}

}  // namespace detail
}  // namespace spectral
}  // namespace pslab
