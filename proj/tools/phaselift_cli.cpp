// Batch runner for the recovery experiments and verification studies.
//
// Exit codes: 0 success, 2 configuration error, 3 a trial failed while
// --strict was given.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phaselift/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStrict = 3;

std::vector<double> parse_snr_list(const std::vector<std::string> &items) {
    std::vector<double> out;
    for (const auto &item : items) {
        char *end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (item.empty() || *end != '\0')
            throw phaselift::ConfigError("bad SNR value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

bool write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
    return static_cast<bool>(f);
}

} // namespace

int main(int argc, char **argv) {
    using namespace phaselift;

    CLI::App app{"PhaseLift experiments: seeded batch runs that emit CSV"};
    app.set_config("--config", "", "Declarative config file (TOML or INI); flags override it");

    std::string experiment;
    std::vector<Index> n_values;
    std::vector<Index> m_values;
    std::vector<double> m_over_n;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> snr_items;
    std::string noise, field, ensemble, snr_reference, out_path;
    double beta = 0.0, success_threshold = 0.0;
    int rank2_samples = 0, t_points = 0, max_iters = 0;
    std::int64_t mc_samples = 0;
    double rel_tol = 0.0;
    bool strict = false;

    app.add_option("--experiment", experiment, "Experiment to run")
        ->required()
        ->check(CLI::IsMember({"snr-sweep", "oversampling-sweep", "phase-transition",
                               "certificate-study", "rip1-study", "f-curves"}));
    auto *o_n = app.add_option("--n", n_values, "Signal lengths (comma list)")->delimiter(',');
    auto *o_m = app.add_option("--m", m_values, "Measurement counts (comma list)")->delimiter(',');
    auto *o_r = app.add_option("--m-over-n", m_over_n, "Oversampling rates m/n (comma list)")
                    ->delimiter(',');
    auto *o_trials = app.add_option("--trials", trials, "Trials per grid point");
    auto *o_seed = app.add_option("--seed", seed, "Base seed");
    auto *o_snr = app.add_option("--snr-db", snr_items, "SNR levels in dB (comma list, inf allowed)")
                      ->delimiter(',');
    auto *o_noise = app.add_option("--noise", noise, "Noise model")
                        ->check(CLI::IsMember({"gaussian", "poisson", "none"}));
    auto *o_field = app.add_option("--field", field, "Scalar field")
                        ->check(CLI::IsMember({"real", "complex"}));
    auto *o_ens = app.add_option("--ensemble", ensemble, "Sensing model, e.g. complex-unit-sphere");
    auto *o_ref = app.add_option("--snr-reference", snr_reference,
                                 "SNR reference power: intensities or signal")
                      ->check(CLI::IsMember({"intensities", "signal"}));
    auto *o_beta = app.add_option("--beta", beta, "Certificate truncation level");
    auto *o_thr = app.add_option("--success-threshold", success_threshold,
                                 "Phase-transition success threshold on rel_mse");
    auto *o_r2 = app.add_option("--rank2-samples", rank2_samples, "Rank-2 samples per RIP-1 check");
    auto *o_mc = app.add_option("--mc-samples", mc_samples, "Monte Carlo draws per t");
    auto *o_tp = app.add_option("--t-points", t_points, "Grid points on [0, 1] for f-curves");
    auto *o_iters = app.add_option("--max-iters", max_iters, "Solver iteration cap per probe");
    auto *o_tol = app.add_option("--rel-tol", rel_tol, "Solver relative tolerance");
    app.add_option("--out", out_path, "Output CSV path (stdout when omitted); timing goes to <out>.timing.csv");
    app.add_flag("--strict", strict, "Exit with code 3 when any trial failed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    ExperimentOutput result;
    try {
        ExperimentConfig cfg = default_config(parse_experiment(experiment));
        if (o_n->count()) cfg.n_values = n_values;
        if (o_m->count()) cfg.m_values = m_values;
        if (o_r->count()) {
            cfg.m_over_n = m_over_n;
            if (!o_m->count()) cfg.m_values.clear();
        }
        if (o_trials->count()) cfg.trials = trials;
        if (o_seed->count()) cfg.seed = seed;
        if (o_snr->count()) cfg.snr_db = parse_snr_list(snr_items);
        if (o_noise->count()) cfg.noise = parse_noise_model(noise);
        if (o_field->count()) cfg.field = field == "real" ? Field::real : Field::complex;
        if (o_ens->count()) cfg.ensemble = parse_sensing_model(ensemble);
        if (o_ref->count()) cfg.snr_reference = parse_snr_reference(snr_reference);
        if (o_beta->count()) cfg.beta = beta;
        if (o_thr->count()) cfg.success_threshold = success_threshold;
        if (o_r2->count()) cfg.rank2_samples = rank2_samples;
        if (o_mc->count()) cfg.mc_samples = mc_samples;
        if (o_tp->count()) cfg.t_points = t_points;
        if (o_iters->count()) cfg.solver.max_iters = max_iters;
        if (o_tol->count()) cfg.solver.rel_tol = rel_tol;
        cfg.validate();
        result = run_experiment(cfg);
    } catch (const InvalidInput &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }

    if (out_path.empty()) {
        std::cout << result.csv;
    } else if (!write_file(out_path, result.csv) ||
               !write_file(out_path + ".timing.csv", result.timing_csv)) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return EXIT_FAILURE;
    }

    if (result.failed_trials > 0)
        std::cerr << result.failed_trials << " trial(s) failed; see the status column\n";
    return strict && result.failed_trials > 0 ? kExitStrict : EXIT_SUCCESS;
}
