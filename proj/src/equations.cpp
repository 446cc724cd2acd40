#include "pslab/equations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "pslab/spectral.hpp"

namespace pslab {

LinearForm::LinearForm(std::vector<std::int64_t> cs) : coeffs(std::move(cs)) {
    if (coeffs.size() < 2) throw std::invalid_argument("LinearForm: s >= 2 required");
    for (std::int64_t c : coeffs)
        if (c == 0) throw std::invalid_argument("LinearForm: coefficients must be non-zero");
}

std::int64_t LinearForm::degree_bound(std::int64_t n) const {
    std::int64_t d = 0;
    for (std::int64_t c : coeffs) d += std::abs(c) * n;
    return d;
}

namespace equations {

namespace {

// ---- partition lattice ----------------------------------------------------

struct Partition {
    std::vector<std::vector<int>> blocks;
    std::int64_t mobius;  // prod over blocks of (-1)^(|B|-1) (|B|-1)!
};

std::int64_t factorial(int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

void gen_partitions(int s, int idx, std::vector<std::vector<int>>& blocks,
                    std::vector<Partition>& out) {
    if (idx == s) {
        std::int64_t mu = 1;
        for (const auto& b : blocks) {
            std::int64_t f = factorial(int(b.size()) - 1);
            mu *= (b.size() % 2 == 0) ? -f : f;
        }
        out.push_back({blocks, mu});
        return;
    }
    // index loop: deeper recursion pushes/pops on blocks, so references
    // into the vector would dangle across the call
    const std::size_t nb = blocks.size();
    for (std::size_t bi = 0; bi < nb; ++bi) {
        blocks[bi].push_back(idx);
        gen_partitions(s, idx + 1, blocks, out);
        blocks[bi].pop_back();
    }
    blocks.push_back({idx});
    gen_partitions(s, idx + 1, blocks, out);
    blocks.pop_back();
}

std::vector<Partition> set_partitions(int s) {
    std::vector<Partition> out;
    std::vector<std::vector<int>> blocks;
    gen_partitions(s, 0, blocks, out);
    return out;
}

// ---- exact spectral counting ----------------------------------------------

// Full grids of f^p for the powers a partition can require.
class PowerGrids {
public:
    PowerGrids(const WeightedIndicator& f, std::int64_t m) : f_(f), m_(m) {}

    const std::vector<cplx>& grid(int power) {
        if (f_.is_zero_one()) power = 1;  // all powers share one transform
        auto it = grids_.find(power);
        if (it != grids_.end()) return it->second;
        const WeightedIndicator g = f_.pow_weights(power);
        return grids_.emplace(power, spectral::detail::grid_transform_auto(g, m_)).first->second;
    }

    double power_sum(int power) {
        const auto& w = f_.weights();
        std::vector<double> v(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) v[i] = std::pow(w[i], double(power));
        return chunked_sum(std::span<const double>(v));
    }

private:
    const WeightedIndicator& f_;
    std::int64_t m_;
    std::map<int, std::vector<cplx>> grids_;
};

// (1/M) sum_j prod_i g_i((e_i * j) mod M), folded over conjugate pairs so
// the result is real by construction.
double mean_of_products(const std::vector<const std::vector<cplx>*>& grids,
                        const std::vector<std::int64_t>& coeffs, std::int64_t m) {
    const std::size_t k = coeffs.size();
    std::vector<std::int64_t> step(k);
    for (std::size_t i = 0; i < k; ++i) step[i] = ((coeffs[i] % m) + m) % m;

    auto product_at = [&](std::int64_t j) {
        cplx z = 1.0;
        for (std::size_t i = 0; i < k; ++i) z *= (*grids[i])[std::size_t(step[i] * j % m)];
        return z;
    };

    const std::int64_t half_open = (m + 1) / 2;  // j = 1 .. half_open-1 pair with M-j
    std::vector<double> partials;
    // fixed 1<<14 chunking; per-chunk partials combined in chunk order
    const std::int64_t chunk = std::int64_t(1) << 14;
    const std::int64_t n_inner = half_open - 1;
    const std::int64_t n_chunks = n_inner <= 0 ? 0 : (n_inner + chunk - 1) / chunk;
    partials.assign(std::size_t(n_chunks), 0.0);
    parallel_chunks(n_inner, chunk, [&](std::int64_t lo, std::int64_t hi) {
        double acc = 0.0;
        for (std::int64_t idx = lo; idx < hi; ++idx) acc += product_at(idx + 1).real();
        partials[std::size_t(lo / chunk)] = acc;
    });

    double total = product_at(0).real();
    if (m % 2 == 0) total += product_at(m / 2).real();
    total += 2.0 * chunked_sum(std::span<const double>(partials));
    return total / double(m);
}

// Count for one partition: zero-coefficient blocks range freely and
// contribute sum_n f(n)^|B|; the rest go through the grid mean.
double partition_count(const Partition& part, const LinearForm& form, PowerGrids& grids,
                       std::int64_t m) {
    double free_factor = 1.0;
    std::vector<const std::vector<cplx>*> gs;
    std::vector<std::int64_t> es;
    for (const auto& block : part.blocks) {
        std::int64_t e = 0;
        for (int i : block) e += form.coeffs[std::size_t(i)];
        if (e == 0) {
            free_factor *= grids.power_sum(int(block.size()));
        } else {
            gs.push_back(&grids.grid(int(block.size())));
            es.push_back(e);
        }
    }
    if (gs.empty()) return free_factor;  // equation degenerates to 0 = 0
    return free_factor * mean_of_products(gs, es, m);
}

std::int64_t choose_grid_m(const LinearForm& form, const WeightedIndicator& f) {
    std::int64_t bound = form.degree_bound(f.cap()) + 1;
    // FFT needs a power of two and pays off only for large supports
    if (double(f.size()) > 64.0 * std::log2(double(bound))) {
        std::int64_t m = 1;
        while (m < bound) m <<= 1;
        return m;
    }
    return bound;
}

std::int64_t round_to_count(double x, const char* what) {
    double r = std::nearbyint(x);
    if (std::abs(x - r) > std::max(1e-3, 1e-6 * std::abs(x)))
        throw invariant_violation("spectral count failed to round to an integer",
                                  {{"op", what}, {"value", format_real(x)}});
    return std::int64_t(r);
}

}  // namespace

// ---- rado -------------------------------------------------------------------

bool rado_check(const LinearForm& form) {
    const int s = form.arity();
    if (s > 30) throw std::invalid_argument("rado_check: s <= 30 required");
    const auto& cs = form.coeffs;
    if (s <= 20) {
        const std::uint32_t full = (std::uint32_t(1) << s) - 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            std::int64_t sum = 0;
            for (int i = 0; i < s; ++i)
                if (mask & (std::uint32_t(1) << i)) sum += cs[std::size_t(i)];
            if (sum == 0) return true;
        }
        return false;
    }
    // meet in the middle
    const int sa = s / 2;
    auto sums_of = [&](int from, int to) {
        std::vector<std::int64_t> sums;  // non-empty subsets only
        const int k = to - from;
        sums.reserve((std::size_t(1) << k) - 1);
        for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << k); ++mask) {
            std::int64_t sum = 0;
            for (int i = 0; i < k; ++i)
                if (mask & (std::uint32_t(1) << i)) sum += cs[std::size_t(from + i)];
            sums.push_back(sum);
        }
        return sums;
    };
    std::vector<std::int64_t> a = sums_of(0, sa), b = sums_of(sa, s);
    std::unordered_set<std::int64_t> bset(b.begin(), b.end());
    for (std::int64_t v : a)
        if (v == 0) return true;
    for (std::int64_t v : b)
        if (v == 0) return true;
    for (std::int64_t v : a)
        if (bset.count(-v)) return true;
    return false;
}

// ---- thresholds & exponents ----------------------------------------------

ThresholdPair thresholds(int s) {
    if (s < 3) throw std::invalid_argument("thresholds: s >= 3 required");
    std::int64_t num = 2 * std::int64_t(s) + 6, den = std::int64_t(s) + 8;
    std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    ThresholdPair t{s, num, den, 2, 1};
    if (s <= 4) {
        t.dagger_num = num;
        t.dagger_den = den;
    }
    return t;
}

std::optional<AdmissibleExponents> admissible_exponents(int s, double c) {
    if (s < 3) throw std::invalid_argument("admissible_exponents: s >= 3 required");
    if (!(c > 1.0)) throw std::invalid_argument("admissible_exponents: c > 1 required");
    if (c >= 2.0) return std::nullopt;  // chi_sup = (2-c)/(5c) <= 0, no decay exponent
    const double chi_sup = 2.0 / (5.0 * c) - 0.2;

    if (s >= 5) {
        // bootstrap from the fourth moment: t0 = 4, any chi in (0, chi_sup)
        double t = (std::max(4.0, double(s - 1)) + double(s)) / 2.0;
        return AdmissibleExponents{0.9 * chi_sup, 4.0, t, ExponentRoute::large_s};
    }

    // small-s route: feasible t0 interval is (max(s-1, t0_min), s) where
    // t0_min solves chi_sup = 2(1-1/c)/(t0-2); nonempty iff c < c*(s)
    const double t0_min = 2.0 + 10.0 * (c - 1.0) / (2.0 - c);
    if (!(t0_min < double(s))) return std::nullopt;
    const double lo = std::max(double(s - 1), t0_min);
    double t0 = 2.0 + (t0_min - 2.0) / 0.9;  // the chi = 0.9*chi_sup witness
    if (!(t0 > lo && t0 < double(s))) t0 = 0.5 * (lo + double(s));
    double chi = 2.0 * (1.0 - 1.0 / c) / (t0 - 2.0);
    double t = 0.5 * (t0 + double(s));
    return AdmissibleExponents{chi, t0, t, ExponentRoute::small_s};
}

// ---- counting ---------------------------------------------------------------

double solution_count(const LinearForm& form, const WeightedIndicator& f, std::int64_t m) {
    if (m < form.degree_bound(f.cap()) + 1)
        throw std::invalid_argument("solution_count: M >= sum|c_i|*N + 1 required (would alias)");
    std::vector<cplx> grid = spectral::detail::grid_transform_auto(f, m);
    std::vector<const std::vector<cplx>*> gs(form.coeffs.size(), &grid);
    return mean_of_products(gs, form.coeffs, m);
}

std::int64_t nontrivial_count(const LinearForm& form, std::span<const std::int64_t> set) {
    const int s = form.arity();
    if (s > 5) throw std::invalid_argument("nontrivial_count: s <= 5 required");
    if (set.empty()) return 0;
    std::vector<std::int64_t> sorted(set.begin(), set.end());
    std::sort(sorted.begin(), sorted.end());
    const std::int64_t cap = sorted.back();
    WeightedIndicator f = WeightedIndicator::from_set(std::move(sorted), cap);
    const std::int64_t m = choose_grid_m(form, f);
    PowerGrids grids(f, m);
    std::int64_t total = 0;
    for (const Partition& part : set_partitions(s)) {
        double cnt = partition_count(part, form, grids, m);
        total += part.mobius * round_to_count(cnt, "nontrivial_count");
    }
    if (total < 0)
        throw invariant_violation("nontrivial_count: negative total",
                                  {{"value", std::to_string(total)}});
    return total;
}

TrivialWeightedCount trivial_weighted_count(const LinearForm& form, const PSParams& params) {
    const int s = form.arity();
    if (s > 5) throw std::invalid_argument("trivial_weighted_count: s <= 5 required");
    if (!params.analytic_regime)
        throw std::invalid_argument("trivial_weighted_count: analytic regime required");
    WeightedIndicator nu = ps_core::nu_vector(params);
    const std::int64_t m = choose_grid_m(form, nu);
    PowerGrids grids(nu, m);
    double distinct = 0.0;
    double total = 0.0;
    for (const Partition& part : set_partitions(s)) {
        double cnt = partition_count(part, form, grids, m);
        if (part.blocks.size() == std::size_t(s)) total = cnt;  // the discrete partition
        distinct += double(part.mobius) * cnt;
    }
    double eta = 2.0 * params.gamma - 1.0;
    return {total - distinct, eta, std::pow(double(params.N), double(s) - 1.0 - eta)};
}

DensityCheck density_weight_check(std::span<const std::int64_t> a, const PSParams& params) {
    std::vector<double> w;
    w.reserve(a.size());
    for (std::int64_t n : a) {
        if (n < 1 || n > params.N || !ps_core::is_member(n, params))
            throw std::invalid_argument("density_weight_check: A must lie inside PS_c(N)");
        w.push_back(ps_core::weight_formula(n, params));
    }
    double sum = chunked_sum(std::span<const double>(w));
    double bound = std::pow(double(a.size()), params.c);
    return {sum, bound, sum >= bound};
}

// ---- brute-force oracles ----------------------------------------------------

namespace {

template <typename Fn>
void for_all_tuples(std::size_t size, int s, const Fn& fn) {
    std::vector<std::size_t> idx(std::size_t(s), 0);
    for (;;) {
        fn(idx);
        int pos = s - 1;
        while (pos >= 0 && ++idx[std::size_t(pos)] == size) {
            idx[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) return;
    }
}

}  // namespace

double enumerate_solution_count(const LinearForm& form, const WeightedIndicator& f) {
    const int s = form.arity();
    if (s > 4) throw std::invalid_argument("enumerate_solution_count: s <= 4 required");
    const auto& supp = f.support();
    const auto& w = f.weights();
    double total = 0.0;
    for_all_tuples(supp.size(), s, [&](const std::vector<std::size_t>& idx) {
        std::int64_t dot = 0;
        for (int i = 0; i < s; ++i) dot += form.coeffs[std::size_t(i)] * supp[idx[std::size_t(i)]];
        if (dot != 0) return;
        double prod = 1.0;
        for (int i = 0; i < s; ++i) prod *= w[idx[std::size_t(i)]];
        total += prod;
    });
    return total;
}

std::int64_t enumerate_nontrivial_count(const LinearForm& form,
                                        std::span<const std::int64_t> set) {
    const int s = form.arity();
    if (s > 4) throw std::invalid_argument("enumerate_nontrivial_count: s <= 4 required");
    std::int64_t total = 0;
    for_all_tuples(set.size(), s, [&](const std::vector<std::size_t>& idx) {
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j)
                if (set[idx[std::size_t(i)]] == set[idx[std::size_t(j)]]) return;
        std::int64_t dot = 0;
        for (int i = 0; i < s; ++i) dot += form.coeffs[std::size_t(i)] * set[idx[std::size_t(i)]];
        if (dot == 0) ++total;
    });
    return total;
}

}  // namespace equations
}  // namespace pslab
