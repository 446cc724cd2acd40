#pragma once
// Single entry point wiring all modules: subcommand dispatch, validated
// configuration, CSV/JSON emission, exit codes (0 success, 1 validation
// error, 2 internal invariant violation emitted as JSON).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pslab::cli {

struct RunConfig {
    std::string subcommand;
    double c = 1.5;
    std::int64_t n = 0;
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;
    int points_per_octave = 1;
    int oversample = 4;
    double t = 2.0;
    std::int64_t grid_m = 0;  // 0 = auto
    std::string coeffs;
    std::string scheme = "random";
    int r = 2;
    int trials = 1;
    std::uint64_t seed = 1;
    double p_max = 1e4;
    std::int64_t m_max = 100;
    double alpha = 0.0;
    std::string deltas;
    bool weights = false;
    bool weighted = false;
    bool nontrivial = false;
    bool fit = false;
    bool timing = false;
    int s = 3;
    int threads = 0;
    std::string format = "csv";
    std::string output;  // empty = stdout
};

// Parses args (without the program name), dispatches, writes the table.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace pslab::cli
