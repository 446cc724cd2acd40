#include "pslab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pslab/csv.hpp"
#include "pslab/equations.hpp"
#include "pslab/expsums.hpp"
#include "pslab/experiments.hpp"
#include "pslab/ps_core.hpp"
#include "pslab/spectral.hpp"

namespace pslab::cli {

namespace {

std::vector<std::int64_t> parse_coeffs(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoll(tok));
    }
    if (out.size() < 2) throw std::invalid_argument("--coeffs needs at least two integers");
    return out;
}

std::vector<double> parse_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

// N_min, 2 N_min, ..., <= N_max (points_per_octave subdivides each doubling)
std::vector<std::int64_t> n_ladder(std::int64_t n_min, std::int64_t n_max, int per_octave) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("require 1 <= Nmin <= Nmax");
    if (per_octave < 1) throw std::invalid_argument("--octaves must be >= 1");
    std::vector<std::int64_t> out;
    double step = std::pow(2.0, 1.0 / double(per_octave));
    double v = double(n_min);
    while (v <= double(n_max) * 1.0000001) {
        auto n = std::int64_t(std::llround(v));
        if (out.empty() || n > out.back()) out.push_back(n);
        v *= step;
    }
    return out;
}

std::string witness_string(const Witness& w) {
    std::string s;
    for (std::size_t i = 0; i < w.tuple.size(); ++i) {
        if (i) s += '|';
        s += std::to_string(w.tuple[i]);
    }
    return s;
}

csv::Table run_gen(const RunConfig& cfg) {
    PSParams params(cfg.c, cfg.n);
    csv::Table t;
    if (cfg.weights) {
        t.header = {"n", "nu"};
        WeightedIndicator nu = ps_core::nu_vector(params);
        for (std::size_t i = 0; i < nu.size(); ++i)
            t.rows.push_back({nu.support()[i], nu.weights()[i]});
    } else {
        t.header = {"n"};
        for (std::int64_t n : ps_core::members(params)) t.rows.push_back({n});
    }
    return t;
}

csv::Table run_decay(const RunConfig& cfg) {
    std::vector<std::int64_t> ns = n_ladder(cfg.n_min, cfg.n_max, cfg.points_per_octave);
    csv::Table t;
    if (cfg.fit) {
        std::vector<PSParams> ps;
        for (std::int64_t n : ns) ps.emplace_back(cfg.c, n);
        ExponentFit fit = spectral::decay_exponent_fit(ps, cfg.oversample);
        double bound = 1.2 - 2.0 / (5.0 * cfg.c);
        t.header = {"c", "slope", "intercept", "r_squared", "points", "bound_slope"};
        t.rows.push_back({cfg.c, fit.slope, fit.intercept, fit.r_squared,
                          std::int64_t(fit.points.size()), bound});
        return t;
    }
    t.header = {"N", "M", "decay_sup", "argmax_alpha"};
    for (std::int64_t n : ns) {
        DecaySample s = spectral::decay_sup(PSParams(cfg.c, n), cfg.oversample);
        t.rows.push_back({s.N, s.M, s.value, s.argmax_alpha});
    }
    return t;
}

csv::Table run_moment(const RunConfig& cfg) {
    PSParams params(cfg.c, cfg.n);
    std::int64_t m = cfg.grid_m > 0 ? cfg.grid_m : 2 * cfg.n + 2;
    double v = spectral::moment_mean(ps_core::nu_vector(params), cfg.t, FrequencyGrid(m));
    csv::Table t;
    t.header = {"c", "N", "t", "M", "moment"};
    t.rows.push_back({cfg.c, cfg.n, cfg.t, m, v});
    return t;
}

csv::Table run_energy(const RunConfig& cfg) {
    std::vector<std::int64_t> ns = n_ladder(cfg.n_min, cfg.n_max, cfg.points_per_octave);
    csv::Table t;
    if (cfg.fit) {
        ExponentFit fit = spectral::energy_exponent_fit(cfg.c, ns);
        t.header = {"c", "slope", "intercept", "r_squared", "points", "bound_slope"};
        t.rows.push_back({cfg.c, fit.slope, fit.intercept, fit.r_squared,
                          std::int64_t(fit.points.size()), 4.0 / cfg.c - 1.0});
        return t;
    }
    t.header = {"N", "energy"};
    for (std::int64_t n : ns)
        t.rows.push_back({n, std::int64_t(spectral::additive_energy(PSParams(cfg.c, n)))});
    return t;
}

csv::Table run_spectrum(const RunConfig& cfg) {
    PSParams params(cfg.c, cfg.n);
    std::vector<double> deltas = parse_reals(cfg.deltas);
    if (deltas.empty()) deltas = {1.0, 0.5, 0.25, 0.125, 0.0625};
    FrequencyGrid grid = FrequencyGrid::for_cap(cfg.n, cfg.oversample);
    RestrictionProfile prof =
        spectral::restriction_profile(ps_core::nu_vector(params), cfg.t, deltas, grid);
    csv::Table t;
    t.header = {"delta", "measure", "normalized", "c_fit"};
    for (const RestrictionRow& r : prof.rows)
        t.rows.push_back({r.delta, r.measure, r.normalized, prof.c_fit});
    return t;
}

csv::Table run_audit(const RunConfig& cfg) {
    PSParams params(cfg.c, std::max<std::int64_t>(2, std::int64_t(2 * cfg.p_max) + 2));
    std::vector<double> ps;
    for (double p = cfg.p_max; p >= 10.0; p /= 10.0) ps.push_back(p);
    std::reverse(ps.begin(), ps.end());
    std::vector<double> alphas = {cfg.alpha};
    AuditTable table = expsums::audit_bounds(params, ps, cfg.m_max, alphas);
    csv::Table t;
    t.header = {"family", "P", "m", "value", "bound", "ratio"};
    for (const AuditRow& r : table.rows)
        t.rows.push_back({r.family, r.P, r.m, r.value, r.bound, r.ratio});
    return t;
}

csv::Table run_solve(const RunConfig& cfg) {
    PSParams params(cfg.c, cfg.n);
    LinearForm form(parse_coeffs(cfg.coeffs));
    std::string coeffs_cell = cfg.coeffs;
    std::replace(coeffs_cell.begin(), coeffs_cell.end(), ',', '|');
    csv::Table t;
    t.header = {"coeffs", "c", "N", "mode", "count"};
    std::string mode;
    double count = 0.0;
    if (cfg.nontrivial && !cfg.weighted) {
        mode = "nontrivial";
        count = double(equations::nontrivial_count(form, ps_core::members(params)));
    } else if (cfg.nontrivial && cfg.weighted) {
        mode = "weighted_nontrivial";
        std::int64_t m = cfg.grid_m > 0 ? cfg.grid_m : form.degree_bound(cfg.n) + 1;
        double total = equations::solution_count(form, ps_core::nu_vector(params), m);
        count = total - equations::trivial_weighted_count(form, params).value;
    } else {
        mode = cfg.weighted ? "weighted" : "all";
        std::int64_t m = cfg.grid_m > 0 ? cfg.grid_m : form.degree_bound(cfg.n) + 1;
        WeightedIndicator f = cfg.weighted
                                  ? ps_core::nu_vector(params)
                                  : WeightedIndicator::from_set(ps_core::members(params), cfg.n);
        count = equations::solution_count(form, f, m);
        if (!cfg.weighted) count = std::nearbyint(count);
    }
    t.rows.push_back({coeffs_cell, cfg.c, cfg.n, mode, count});
    return t;
}

csv::Table run_thresholds(const RunConfig& cfg) {
    ThresholdPair p = equations::thresholds(cfg.s);
    auto frac = [](std::int64_t num, std::int64_t den) {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    };
    csv::Table t;
    t.header = {"s", "c_star", "c_dagger"};
    t.rows.push_back({std::int64_t(p.s), frac(p.star_num, p.star_den),
                      frac(p.dagger_num, p.dagger_den)});
    return t;
}

csv::Table run_admissible(const RunConfig& cfg) {
    auto w = equations::admissible_exponents(cfg.s, cfg.c);
    csv::Table t;
    t.header = {"s", "c", "exists", "route", "chi", "t0", "t"};
    if (w)
        t.rows.push_back({std::int64_t(cfg.s), cfg.c, true,
                          std::string(w->route == ExponentRoute::small_s ? "small_s" : "large_s"),
                          w->chi, w->t0, w->t});
    else
        t.rows.push_back({std::int64_t(cfg.s), cfg.c, false, std::string("none"), 0.0, 0.0, 0.0});
    return t;
}

csv::Table run_colour(const RunConfig& cfg) {
    PSParams params(cfg.c, cfg.n);
    LinearForm form(parse_coeffs(cfg.coeffs));
    std::vector<ColourScheme> schemes = {scheme_from_name(cfg.scheme)};
    std::vector<int> rs = {cfg.r};
    auto rows = experiments::colour_scan(form, params, schemes, rs, cfg.trials, cfg.seed);
    csv::Table t;
    t.header = {"scheme", "r", "trial", "found", "witness", "colour", "valid"};
    if (cfg.timing) t.header.push_back("wall_ms");
    for (const ColourScanRow& r : rows) {
        std::vector<csv::Cell> row = {r.scheme,
                                      std::int64_t(r.r),
                                      std::int64_t(r.trial),
                                      r.found,
                                      r.witness ? witness_string(*r.witness) : std::string("-"),
                                      std::int64_t(r.witness ? r.witness->colour : 0),
                                      r.witness_valid};
        if (cfg.timing) row.push_back(r.wall_ms);
        t.rows.push_back(std::move(row));
    }
    return t;
}

csv::Table run_density(const RunConfig& cfg) {
    PSParams params(cfg.c, cfg.n);
    GreedyResult g = experiments::greedy_3ap_free(params);
    csv::Table t;
    t.header = {"c", "N", "ps_size", "set_size", "ratio", "comparator", "certified"};
    t.rows.push_back({cfg.c, cfg.n, std::int64_t(g.ps_size), std::int64_t(g.set.size()),
                      g.ratio, g.density_comparator, g.certified});
    return t;
}

void emit(const csv::Table& t, const RunConfig& cfg, std::ostream& out) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw std::invalid_argument("cannot open output file: " + cfg.output);
        os = &file;
    }
    if (cfg.format == "json")
        csv::write_json(*os, t);
    else
        csv::write_csv(*os, t);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"pslab: Piatetski-Shapiro sets, exponential sums, and solution counting"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", cfg.output, "output path (default stdout)");
        sub->add_option("--threads", cfg.threads, "worker cap (0 = hardware)")
            ->envname("PSLAB_THREADS");
    };

    CLI::App* gen = app.add_subcommand("gen", "emit PS_c(N) members");
    gen->add_option("--c", cfg.c, "exponent c > 1")->required();
    gen->add_option("--N", cfg.n, "cap N")->required();
    gen->add_flag("--weights", cfg.weights, "include nu column");
    add_common(gen);

    CLI::App* decay = app.add_subcommand("decay", "grid max of |nu_hat - 1_hat| over an N ladder");
    decay->add_option("--c", cfg.c)->required();
    decay->add_option("--Nmin", cfg.n_min)->required();
    decay->add_option("--Nmax", cfg.n_max)->required();
    decay->add_option("--octaves", cfg.points_per_octave, "sample points per octave");
    decay->add_option("--K", cfg.oversample, "grid oversampling factor");
    decay->add_flag("--fit", cfg.fit, "emit the log-log fit row instead");
    add_common(decay);

    CLI::App* moment = app.add_subcommand("moment", "(1/M) sum_j |nu_hat(j/M)|^t");
    moment->add_option("--c", cfg.c)->required();
    moment->add_option("--N", cfg.n)->required();
    moment->add_option("--t", cfg.t)->required();
    moment->add_option("--M", cfg.grid_m, "grid size (default 2N+2)");
    add_common(moment);

    CLI::App* energy = app.add_subcommand("energy", "additive energy over an N ladder");
    energy->add_option("--c", cfg.c)->required();
    energy->add_option("--Nmin", cfg.n_min)->required();
    energy->add_option("--Nmax", cfg.n_max)->required();
    energy->add_option("--octaves", cfg.points_per_octave);
    energy->add_flag("--fit", cfg.fit);
    add_common(energy);

    CLI::App* spectrum = app.add_subcommand("spectrum", "large-spectrum measure profile");
    spectrum->add_option("--c", cfg.c)->required();
    spectrum->add_option("--N", cfg.n)->required();
    spectrum->add_option("--t", cfg.t)->required();
    spectrum->add_option("--deltas", cfg.deltas, "comma-separated deltas in (0,1]");
    spectrum->add_option("--K", cfg.oversample);
    add_common(spectrum);

    CLI::App* audit = app.add_subcommand("audit", "phase-sum and block bound ratios");
    audit->add_option("--c", cfg.c)->required();
    audit->add_option("--Pmax", cfg.p_max)->required();
    audit->add_option("--mmax", cfg.m_max)->required();
    audit->add_option("--alpha", cfg.alpha);
    add_common(audit);

    CLI::App* solve = app.add_subcommand("solve", "solution counting for c.x = 0");
    solve->add_option("--c", cfg.c)->required();
    solve->add_option("--N", cfg.n)->required();
    solve->add_option("--coeffs", cfg.coeffs, "e.g. 1,1,-1")->required();
    solve->add_option("--M", cfg.grid_m, "grid size (default sum|c_i|N+1)");
    solve->add_flag("--weighted", cfg.weighted, "nu weights instead of 0/1");
    solve->add_flag("--nontrivial", cfg.nontrivial, "pairwise-distinct solutions only");
    add_common(solve);

    CLI::App* thresholds = app.add_subcommand("thresholds", "c*(s) and c_dagger(s)");
    thresholds->add_option("--s", cfg.s)->required();
    add_common(thresholds);

    CLI::App* admissible = app.add_subcommand("admissible", "restriction exponent witness");
    admissible->add_option("--s", cfg.s)->required();
    admissible->add_option("--c", cfg.c)->required();
    add_common(admissible);

    CLI::App* colour = app.add_subcommand("colour", "monochromatic-solution scan");
    colour->add_option("--c", cfg.c)->required();
    colour->add_option("--N", cfg.n)->required();
    colour->add_option("--coeffs", cfg.coeffs)->required();
    colour->add_option("--scheme", cfg.scheme, "random | residue | dyadic_band");
    colour->add_option("--r", cfg.r, "number of colours");
    colour->add_option("--trials", cfg.trials);
    colour->add_option("--seed", cfg.seed);
    colour->add_flag("--timing", cfg.timing, "append the wall_ms column");
    add_common(colour);

    CLI::App* density = app.add_subcommand("density", "greedy 3AP-free subset");
    density->add_option("--c", cfg.c)->required();
    density->add_option("--N", cfg.n)->required();
    add_common(density);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        set_thread_limit(cfg.threads);
        csv::Table table;
        if (gen->parsed()) table = run_gen(cfg);
        else if (decay->parsed()) table = run_decay(cfg);
        else if (moment->parsed()) table = run_moment(cfg);
        else if (energy->parsed()) table = run_energy(cfg);
        else if (spectrum->parsed()) table = run_spectrum(cfg);
        else if (audit->parsed()) table = run_audit(cfg);
        else if (solve->parsed()) table = run_solve(cfg);
        else if (thresholds->parsed()) table = run_thresholds(cfg);
        else if (admissible->parsed()) table = run_admissible(cfg);
        else if (colour->parsed()) table = run_colour(cfg);
        else if (density->parsed()) table = run_density(cfg);
        emit(table, cfg, out);
        return 0;
    } catch (const invariant_violation& v) {
        err << v.to_json() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace pslab::cli
