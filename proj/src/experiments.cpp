#include "pslab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pslab {

std::string scheme_name(ColourScheme s) {
    switch (s) {
        case ColourScheme::random: return "random";
        case ColourScheme::residue: return "residue";
        case ColourScheme::dyadic_band: return "dyadic_band";
    }
    return "?";
}

ColourScheme scheme_from_name(const std::string& name) {
    if (name == "random") return ColourScheme::random;
    if (name == "residue") return ColourScheme::residue;
    if (name == "dyadic_band") return ColourScheme::dyadic_band;
    throw std::invalid_argument("unknown colouring scheme: " + name);
}

std::vector<std::int64_t> Colouring::colour_class(int k) const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (colour_of[i] == k) out.push_back(members[i]);
    return out;
}

int Colouring::colour_of_member(std::int64_t n) const {
    auto it = std::lower_bound(members.begin(), members.end(), n);
    if (it == members.end() || *it != n) return 0;
    return colour_of[std::size_t(it - members.begin())];
}

namespace experiments {

Colouring make_colouring(const PSParams& params, ColourScheme scheme, int r,
                         std::uint64_t seed) {
    if (r < 1) throw std::invalid_argument("make_colouring: r >= 1 required");
    Colouring col;
    col.members = ps_core::members(params);
    col.colour_of.resize(col.members.size());
    col.r = r;
    col.scheme = scheme;
    col.seed = seed;
    switch (scheme) {
        case ColourScheme::random: {
            splitmix64 rng(seed);
            for (auto& c : col.colour_of) c = int(rng.below(std::uint64_t(r))) + 1;
            break;
        }
        case ColourScheme::residue:
            for (std::size_t i = 0; i < col.members.size(); ++i)
                col.colour_of[i] = int(col.members[i] % r) + 1;
            break;
        case ColourScheme::dyadic_band:
            for (std::size_t i = 0; i < col.members.size(); ++i) {
                int band = std::bit_width(std::uint64_t(col.members[i])) - 1;
                col.colour_of[i] = band % r + 1;
            }
            break;
    }
    return col;
}

namespace {

// Exhaustive ascending search for a distinct-coordinate solution inside a
// class; the last coordinate is solved by hash lookup.  Only entered after
// the exact count gate reports a solution, so it terminates quickly in
// practice.
bool search_exact(const LinearForm& form, const std::vector<std::int64_t>& cls,
                  std::vector<std::int64_t>& tuple, std::size_t pos,
                  const std::unordered_set<std::int64_t>& lookup) {
    const int s = form.arity();
    if (int(pos) == s - 1) {
        std::int64_t rest = 0;
        for (int i = 0; i < s - 1; ++i) rest += form.coeffs[std::size_t(i)] * tuple[std::size_t(i)];
        std::int64_t cs = form.coeffs[std::size_t(s - 1)];
        if (rest % cs != 0) return false;
        std::int64_t x = -rest / cs;
        if (x < 1 || !lookup.count(x)) return false;
        for (int i = 0; i < s - 1; ++i)
            if (tuple[std::size_t(i)] == x) return false;
        tuple.push_back(x);
        return true;
    }
    for (std::int64_t v : cls) {
        bool dup = false;
        for (std::size_t i = 0; i < pos; ++i)
            if (tuple[i] == v) dup = true;
        if (dup) continue;
        tuple.push_back(v);
        if (search_exact(form, cls, tuple, pos + 1, lookup)) return true;
        tuple.pop_back();
    }
    return false;
}

bool search_randomized(const LinearForm& form, const std::vector<std::int64_t>& cls,
                       std::vector<std::int64_t>& tuple, std::uint64_t seed,
                       const std::unordered_set<std::int64_t>& lookup) {
    const int s = form.arity();
    splitmix64 rng(seed ^ 0xA3C59AC2ull);
    const int attempts = 2'000'000;
    for (int a = 0; a < attempts; ++a) {
        tuple.clear();
        bool ok = true;
        std::int64_t rest = 0;
        for (int i = 0; i < s - 1 && ok; ++i) {
            std::int64_t v = cls[std::size_t(rng.below(cls.size()))];
            for (std::size_t j2 = 0; j2 < tuple.size(); ++j2)
                if (tuple[j2] == v) ok = false;
            if (!ok) break;
            tuple.push_back(v);
            rest += form.coeffs[std::size_t(i)] * v;
        }
        if (!ok) continue;
        std::int64_t cs = form.coeffs[std::size_t(s - 1)];
        if (rest % cs != 0) continue;
        std::int64_t x = -rest / cs;
        if (x < 1 || !lookup.count(x)) continue;
        bool dup = false;
        for (std::int64_t t : tuple)
            if (t == x) dup = true;
        if (dup) continue;
        tuple.push_back(x);
        return true;
    }
    return false;
}

}  // namespace

std::optional<Witness> find_monochromatic(const LinearForm& form, const Colouring& colouring) {
    const int s = form.arity();
    for (int k = 1; k <= colouring.r; ++k) {
        std::vector<std::int64_t> cls = colouring.colour_class(k);
        if (std::size_t(s) > cls.size()) continue;
        std::unordered_set<std::int64_t> lookup(cls.begin(), cls.end());
        std::vector<std::int64_t> tuple;
        tuple.reserve(std::size_t(s));
        if (s <= 5) {
            if (equations::nontrivial_count(form, cls) == 0) continue;
            if (s <= 4) {
                if (search_exact(form, cls, tuple, 0, lookup)) return Witness{k, tuple};
                throw invariant_violation("witness extraction failed after positive count",
                                          {{"colour", std::to_string(k)}});
            }
        }
        if (search_randomized(form, cls, tuple, colouring.seed + std::uint64_t(k), lookup))
            return Witness{k, tuple};
    }
    return std::nullopt;
}

bool verify_witness(const LinearForm& form, const Colouring& colouring, const Witness& w) {
    const int s = form.arity();
    if (int(w.tuple.size()) != s) return false;
    std::int64_t dot = 0;
    for (int i = 0; i < s; ++i) dot += form.coeffs[std::size_t(i)] * w.tuple[std::size_t(i)];
    if (dot != 0) return false;
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            if (w.tuple[std::size_t(i)] == w.tuple[std::size_t(j)]) return false;
    for (std::int64_t x : w.tuple)
        if (colouring.colour_of_member(x) != w.colour) return false;
    return true;
}

GreedyResult greedy_3ap_free(const PSParams& params) {
    std::vector<std::int64_t> ps = ps_core::members(params);
    std::vector<std::int64_t> a;
    std::unordered_set<std::int64_t> in_a;
    for (std::int64_t n : ps) {
        bool blocked = false;
        // n as the doubled term: x + y = 2n with x != y
        for (std::int64_t x : a) {
            std::int64_t y = 2 * n - x;
            if (y != x && in_a.count(y)) {
                blocked = true;
                break;
            }
        }
        // n as an endpoint: n + y = 2z
        if (!blocked)
            for (std::int64_t z : a) {
                std::int64_t y = 2 * z - n;
                if (y != z && y != n && in_a.count(y)) {
                    blocked = true;
                    break;
                }
            }
        if (!blocked) {
            a.push_back(n);
            in_a.insert(n);
        }
    }

    GreedyResult res;
    res.set = a;
    res.ps_size = ps.size();
    res.ratio = ps.empty() ? 0.0 : double(a.size()) / double(ps.size());
    double ll = std::log(std::log(double(params.N)));
    res.density_comparator = ll > 0.0 ? std::pow(ll, -0.9 / params.c) : 1.0;
    res.certified = equations::nontrivial_count(LinearForm({1, 1, -2}), a) == 0;
    return res;
}

std::vector<ColourScanRow> colour_scan(const LinearForm& form, const PSParams& params,
                                       std::span<const ColourScheme> schemes,
                                       std::span<const int> r_values, int trials,
                                       std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("colour_scan: trials >= 1 required");
    std::vector<ColourScanRow> rows;
    for (ColourScheme scheme : schemes) {
        const int scheme_trials = scheme == ColourScheme::random ? trials : 1;
        for (int r : r_values) {
            for (int trial = 1; trial <= scheme_trials; ++trial) {
                auto t0 = std::chrono::steady_clock::now();
                Colouring col =
                    make_colouring(params, scheme, r, seed + std::uint64_t(trial - 1));
                std::optional<Witness> w = find_monochromatic(form, col);
                auto t1 = std::chrono::steady_clock::now();
                ColourScanRow row;
                row.scheme = scheme_name(scheme);
                row.r = r;
                row.trial = trial;
                row.found = w.has_value();
                row.witness = w;
                row.witness_valid = w ? verify_witness(form, col, *w) : false;
                row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

}  // namespace experiments
}  // namespace pslab
