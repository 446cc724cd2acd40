#pragma once
// Colouring experiments over PS_c(N): reproducible colouring schemes,
// monochromatic-solution search with witness extraction, the greedy
// 3AP-free construction, and the aggregated colour scan.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pslab/equations.hpp"
#include "pslab/ps_core.hpp"

namespace pslab {

enum class ColourScheme { random, residue, dyadic_band };

std::string scheme_name(ColourScheme s);
ColourScheme scheme_from_name(const std::string& name);

// Assignment of each PS member to a colour in [1, r].  Reconstruction from
// (scheme, r, seed, params) is bit-identical across platforms; the random
// scheme draws one SplitMix64 value per member, in member order.
struct Colouring {
    std::vector<std::int64_t> members;  // ascending
    std::vector<int> colour_of;         // parallel, values in [1, r]
    int r;
    ColourScheme scheme;
    std::uint64_t seed;

    std::vector<std::int64_t> colour_class(int k) const;
    int colour_of_member(std::int64_t n) const;  // 0 when n is not a member
};

struct Witness {
    int colour;
    std::vector<std::int64_t> tuple;
};

struct GreedyResult {
    std::vector<std::int64_t> set;
    std::size_t ps_size;
    double ratio;               // |set| / |PS_c(N)|
    double density_comparator;  // (log log N)^(-(s-2-eps)/c), s = 3, eps = 0.1
    bool certified;             // nontrivial_count((1,1,-2), set) == 0
};

struct ColourScanRow {
    std::string scheme;
    int r;
    int trial;
    bool found;
    std::optional<Witness> witness;
    bool witness_valid;
    double wall_ms;
};

namespace experiments {

// random: colour = (SplitMix64 stream value mod r) + 1 per member in order;
// residue: (n mod r) + 1;  dyadic_band: (floor(log2 n) mod r) + 1.
Colouring make_colouring(const PSParams& params, ColourScheme scheme, int r,
                         std::uint64_t seed);

// For each colour class, gate on nontrivial_count > 0, then extract a
// witness by fixing coordinates in ascending member order (the completion
// recount for the last two coordinates is a hashed O(|class|) walk).
// Exact for s <= 4; seeded randomized search for s >= 5.
std::optional<Witness> find_monochromatic(const LinearForm& form, const Colouring& colouring);

// Exact integer re-validation: c.x = 0, pairwise distinct, single colour.
bool verify_witness(const LinearForm& form, const Colouring& colouring, const Witness& w);

// Ascending greedy selection avoiding x + y = 2z, certified afterwards by
// the nontrivial_count oracle.
GreedyResult greedy_3ap_free(const PSParams& params);

std::vector<ColourScanRow> colour_scan(const LinearForm& form, const PSParams& params,
                                       std::span<const ColourScheme> schemes,
                                       std::span<const int> r_values, int trials,
                                       std::uint64_t seed);

}  // namespace experiments
}  // namespace pslab
