#include "phaselift/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "phaselift/analysis.hpp"
#include "phaselift/certificate.hpp"
#include "phaselift/recovery.hpp"

namespace phaselift {

std::string_view to_string(Experiment e) {
    switch (e) {
    case Experiment::snr_sweep: return "snr-sweep";
    case Experiment::oversampling_sweep: return "oversampling-sweep";
    case Experiment::phase_transition: return "phase-transition";
    case Experiment::certificate_study: return "certificate-study";
    case Experiment::rip1_study: return "rip1-study";
    case Experiment::f_curves: return "f-curves";
    }
    return "unknown";
}

Experiment parse_experiment(std::string_view name) {
    for (auto e : {Experiment::snr_sweep, Experiment::oversampling_sweep,
                   Experiment::phase_transition, Experiment::certificate_study,
                   Experiment::rip1_study, Experiment::f_curves})
        if (to_string(e) == name)
            return e;
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

namespace {

bool is_recovery(Experiment e) {
    return e == Experiment::snr_sweep || e == Experiment::oversampling_sweep ||
           e == Experiment::phase_transition;
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

template <typename T>
std::string join(const std::vector<T> &values) {
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? "," : "") << values[i];
    return os.str();
}

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

Index m_for(Index n, double ratio) {
    return static_cast<Index>(std::llround(ratio * static_cast<double>(n)));
}

double median(std::vector<double> v) {
    if (v.empty())
        return std::numeric_limits<double>::quiet_NaN();
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// Runs task(i) for i in [0, count) on a pool of workers. Each task writes
// only its own output slot, so results do not depend on scheduling.
template <typename Task>
void parallel_for(int count, Task &&task) {
    const int workers = std::max(1, std::min(worker_threads(), count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++)
                task(i);
        });
}

template <typename Body>
auto with_field(Field field, Body &&body) {
    if (field == Field::real)
        return body.template operator()<double>();
    return body.template operator()<Complex>();
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
        .count();
}

struct GridPoint {
    Index n;
    Index m;
    double snr_db;
};

std::vector<GridPoint> recovery_grid(const ExperimentConfig &cfg) {
    std::vector<GridPoint> grid;
    for (Index n : cfg.n_values)
        for (Index m : cfg.m_grid(n))
            for (double snr : cfg.snr_db)
                grid.push_back({n, m, snr});
    return grid;
}

template <FieldScalar Scalar>
void run_one_trial(const ExperimentConfig &cfg, const GridPoint &gp, TrialRecord &rec) {
    const Signal<Scalar> x = random_signal<Scalar>(gp.n, rec.seed);
    const auto ens = sample_ensemble<Scalar>(gp.n, gp.m, cfg.resolved_ensemble(), rec.seed);
    const RealVector b = intensities(ens, x);
    const NoiseSpec spec{cfg.noise, gp.snr_db, cfg.snr_reference, x.squared_norm()};
    const IntensityData data = add_noise(b, spec, rec.seed);
    const auto report = solve_constrained(ens, data, cfg.solver);
    const auto result = recover(report.X_hat, std::optional<Signal<Scalar>>(x));
    rec.rel_mse = *result.rel_mse;
    rec.rel_mse_debiased = *result.rel_mse_debiased;
    rec.residual = report.residual;
    rec.eps = report.eps_used;
    rec.lambda = report.lambda_used;
    rec.iterations = report.iterations;
    rec.converged = report.converged;
    rec.success = rec.rel_mse <= cfg.success_threshold;
}

std::string timing_header() { return "grid_index,trial,wall_time_ms\n"; }

const char *kRecoveryHeader =
    "row_type,experiment,grid_index,trial,seed,n,m,snr_db,noise,status,converged,"
    "rel_mse,rel_mse_debiased,rel_rms,rel_rms_debiased,residual,eps,lambda,"
    "iterations,success,trials,success_rate\n";

std::string recovery_csv(const ExperimentConfig &cfg, const std::vector<TrialRecord> &records,
                         const std::vector<SummaryRecord> &summaries) {
    std::ostringstream os;
    os << csv_preamble(cfg) << kRecoveryHeader;
    std::size_t r = 0;
    const std::string exp(to_string(cfg.experiment));
    const std::string noise(to_string(cfg.noise));
    for (const auto &s : summaries) {
        for (; r < records.size() && records[r].grid_index == s.grid_index; ++r) {
            const auto &t = records[r];
            os << "trial," << exp << ',' << t.grid_index << ',' << t.trial << ',' << t.seed
               << ',' << t.n << ',' << t.m << ',' << num(t.snr_db) << ',' << noise << ','
               << csv_escape(t.status) << ',' << (t.converged ? 1 : 0) << ','
               << num(t.rel_mse) << ',' << num(t.rel_mse_debiased) << ','
               << num(std::sqrt(t.rel_mse)) << ',' << num(std::sqrt(t.rel_mse_debiased))
               << ',' << num(t.residual) << ',' << num(t.eps) << ',' << num(t.lambda) << ','
               << t.iterations << ',' << (t.success ? 1 : 0) << ",,\n";
        }
        os << "summary," << exp << ',' << s.grid_index << ",," << cfg.seed << ',' << s.n << ','
           << s.m << ',' << num(s.snr_db) << ',' << noise << ",,," << num(s.mean_rel_mse)
           << ",," << num(s.mean_rel_rms) << ',' << num(s.mean_rel_rms_debiased)
           << ",,,,,," << s.trials << ',' << num(s.success_rate) << '\n';
    }
    return os.str();
}

std::string recovery_timing(const std::vector<TrialRecord> &records) {
    std::ostringstream os;
    os << timing_header();
    for (const auto &t : records)
        os << t.grid_index << ',' << t.trial << ',' << num(t.wall_time_ms) << '\n';
    return os.str();
}

ExperimentOutput run_recovery(const ExperimentConfig &cfg) {
    const auto records = run_recovery_trials(cfg);
    ExperimentOutput out;
    out.csv = recovery_csv(cfg, records, summarize(records));
    out.timing_csv = recovery_timing(records);
    out.failed_trials = static_cast<int>(
        std::count_if(records.begin(), records.end(), [](const auto &r) { return r.failed(); }));
    return out;
}

void expect_experiment(const ExperimentConfig &cfg, Experiment e) {
    if (cfg.experiment != e)
        throw ConfigError("configuration is for '" + std::string(to_string(cfg.experiment)) +
                          "', runner expects '" + std::string(to_string(e)) + "'");
}

std::string sha1_hex(const std::string &data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha1(), nullptr) != 1)
        throw NumericalError("SHA-1 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

} // namespace

// Configuration -------------------------------------------------------------

ExperimentConfig default_config(Experiment e) {
    ExperimentConfig cfg;
    cfg.experiment = e;
    switch (e) {
    case Experiment::snr_sweep: break;
    case Experiment::oversampling_sweep:
        cfg.m_over_n = {5, 6, 8, 10, 12, 14, 16, 18, 20, 22};
        cfg.snr_db = {15.0};
        break;
    case Experiment::phase_transition:
        cfg.n_values = {32};
        cfg.m_over_n = {1, 2, 3, 4, 5, 6};
        cfg.noise = NoiseModel::none;
        cfg.snr_db = {std::numeric_limits<double>::infinity()};
        break;
    case Experiment::certificate_study:
        cfg.n_values = {64};
        cfg.m_over_n = {2, 8, 32, 100};
        cfg.field = Field::real;
        cfg.noise = NoiseModel::none;
        cfg.snr_db = {std::numeric_limits<double>::infinity()};
        break;
    case Experiment::rip1_study:
        cfg.n_values = {16};
        cfg.m_over_n = {4, 16, 64, 256};
        cfg.field = Field::real;
        cfg.noise = NoiseModel::none;
        cfg.snr_db = {std::numeric_limits<double>::infinity()};
        break;
    case Experiment::f_curves:
        cfg.field = Field::real;
        cfg.noise = NoiseModel::none;
        cfg.snr_db = {std::numeric_limits<double>::infinity()};
        cfg.trials = 1;
        break;
    }
    return cfg;
}

std::vector<Index> ExperimentConfig::m_grid(Index n) const {
    if (!m_values.empty())
        return m_values;
    std::vector<Index> out;
    for (double r : m_over_n)
        out.push_back(m_for(n, r));
    return out;
}

SensingModel ExperimentConfig::resolved_ensemble() const {
    if (ensemble)
        return *ensemble;
    const bool gaussian = experiment == Experiment::certificate_study ||
                          experiment == Experiment::rip1_study;
    if (field == Field::real)
        return gaussian ? SensingModel::real_gaussian : SensingModel::real_unit_sphere;
    return gaussian ? SensingModel::complex_gaussian : SensingModel::complex_unit_sphere;
}

void ExperimentConfig::validate() const {
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (n_values.empty())
        throw ConfigError("n grid is empty");
    if (m_values.empty() && m_over_n.empty())
        throw ConfigError("m grid is empty");
    for (Index n : n_values)
        if (n < 1)
            throw ConfigError("every n must be at least 1");
    for (double r : m_over_n)
        if (!(r > 0.0) || !std::isfinite(r))
            throw ConfigError("every m/n must be positive and finite");
    for (Index n : n_values) {
        for (Index m : m_grid(n)) {
            if (m < 1)
                throw ConfigError("m must be at least 1 (n = " + std::to_string(n) + ")");
            if (experiment == Experiment::rip1_study && m < n)
                throw ConfigError("rip1-study needs m >= n");
        }
    }
    if (is_recovery(experiment)) {
        if (snr_db.empty())
            throw ConfigError("SNR grid is empty");
        for (double s : snr_db)
            if (std::isnan(s) || s == -std::numeric_limits<double>::infinity())
                throw ConfigError("SNR values must be finite or +inf");
    }
    if (ensemble) {
        if (*ensemble == SensingModel::custom)
            throw ConfigError("the custom ensemble cannot be sampled");
        if (!model_matches_field(*ensemble, field))
            throw ConfigError("ensemble '" + std::string(to_string(*ensemble)) +
                              "' does not match field " + std::string(to_string(field)));
    }
    if (experiment == Experiment::certificate_study && !is_gaussian(resolved_ensemble()))
        throw ConfigError("certificate-study requires a Gaussian ensemble");
    if (!(success_threshold > 0.0))
        throw ConfigError("success threshold must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw ConfigError("beta must be positive");
    if (rank2_samples < 1)
        throw ConfigError("rank2 samples must be at least 1");
    if (mc_samples < 1000)
        throw ConfigError("Monte Carlo sample count must be at least 1000");
    if (t_points < 2)
        throw ConfigError("f-curves need at least two t points");
    try {
        solver.validate();
    } catch (const InvalidInput &e) {
        throw ConfigError(e.what());
    }
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os << "experiment=" << to_string(experiment) << ";n=" << join(n_values)
       << ";m_over_n=" << join(m_over_n) << ";m=" << join(m_values) << ";field=" << to_string(field)
       << ";ensemble=" << to_string(resolved_ensemble()) << ";noise=" << to_string(noise)
       << ";snr_db=" << join(snr_db) << ";snr_reference=" << to_string(snr_reference)
       << ";trials=" << trials << ";seed=" << seed
       << ";success_threshold=" << num(success_threshold) << ";beta=" << num(beta)
       << ";rank2_samples=" << rank2_samples << ";mc_samples=" << mc_samples
       << ";t_points=" << t_points << ";max_iters=" << solver.max_iters
       << ";rel_tol=" << num(solver.rel_tol) << ";step_safety=" << num(solver.step_safety)
       << ";restart=" << (solver.restart ? 1 : 0);
    return os.str();
}

std::string ExperimentConfig::content_hash() const {
    const std::string text = canonical();
    std::string blob = "blob " + std::to_string(text.size());
    blob.push_back('\0');
    blob += text;
    return sha1_hex(blob);
}

std::string csv_preamble(const ExperimentConfig &cfg) {
    std::ostringstream os;
    os << "# phaselift-csv schema=" << kCsvSchemaVersion << '\n'
       << "# config: " << cfg.canonical() << '\n'
       << "# config-hash: " << cfg.content_hash() << '\n';
    return os.str();
}

int worker_threads() {
    if (const char *env = std::getenv("PHASELIFT_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return static_cast<int>(std::min(v, 1024L));
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::uint64_t trial_seed(std::uint64_t base, int grid_index, int trial) {
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(base) ^ static_cast<std::uint64_t>(grid_index)) ^
               static_cast<std::uint64_t>(trial));
}

template <FieldScalar Scalar>
Signal<Scalar> random_signal(Index n, std::uint64_t seed) {
    Vector<Scalar> v = gaussian_vector<Scalar>(n, seed, Stream::signal, 0);
    if constexpr (std::same_as<Scalar, Complex>)
        v *= std::sqrt(2.0); // unit-variance real and imaginary parts
    return Signal<Scalar>(std::move(v));
}

template Signal<double> random_signal<double>(Index, std::uint64_t);
template Signal<Complex> random_signal<Complex>(Index, std::uint64_t);

// Recovery experiments ------------------------------------------------------

std::vector<TrialRecord> run_recovery_trials(const ExperimentConfig &cfg) {
    cfg.validate();
    if (!is_recovery(cfg.experiment))
        throw ConfigError("'" + std::string(to_string(cfg.experiment)) +
                          "' is not a recovery experiment");
    const auto grid = recovery_grid(cfg);
    const int count = static_cast<int>(grid.size()) * cfg.trials;
    std::vector<TrialRecord> records(static_cast<std::size_t>(count));

    parallel_for(count, [&](int k) {
        const int g = k / cfg.trials;
        const GridPoint &gp = grid[static_cast<std::size_t>(g)];
        TrialRecord &rec = records[static_cast<std::size_t>(k)];
        rec.experiment = cfg.experiment;
        rec.grid_index = g;
        rec.trial = k % cfg.trials;
        rec.seed = trial_seed(cfg.seed, g, rec.trial);
        rec.n = gp.n;
        rec.m = gp.m;
        rec.snr_db = gp.snr_db;
        rec.noise = cfg.noise;
        const auto start = std::chrono::steady_clock::now();
        try {
            with_field(cfg.field, [&]<typename S>() { run_one_trial<S>(cfg, gp, rec); });
        } catch (const std::exception &e) {
            rec.status = std::string("error: ") + e.what();
            rec.rel_mse = rec.rel_mse_debiased = std::numeric_limits<double>::quiet_NaN();
            rec.success = false;
        }
        rec.wall_time_ms = elapsed_ms(start);
    });
    return records;
}

std::vector<SummaryRecord> summarize(const std::vector<TrialRecord> &records) {
    std::vector<SummaryRecord> out;
    for (std::size_t i = 0; i < records.size();) {
        const int g = records[i].grid_index;
        SummaryRecord s;
        s.grid_index = g;
        s.n = records[i].n;
        s.m = records[i].m;
        s.snr_db = records[i].snr_db;
        int successes = 0;
        int total = 0;
        for (; i < records.size() && records[i].grid_index == g; ++i) {
            const auto &r = records[i];
            ++total;
            successes += r.success ? 1 : 0;
            if (r.failed())
                continue;
            ++s.trials;
            s.mean_rel_mse += r.rel_mse;
            s.mean_rel_rms += std::sqrt(r.rel_mse);
            s.mean_rel_rms_debiased += std::sqrt(r.rel_mse_debiased);
        }
        if (s.trials > 0) {
            const double k = s.trials;
            s.mean_rel_mse /= k;
            s.mean_rel_rms /= k;
            s.mean_rel_rms_debiased /= k;
        } else {
            s.mean_rel_mse = s.mean_rel_rms = s.mean_rel_rms_debiased =
                std::numeric_limits<double>::quiet_NaN();
        }
        s.success_rate = total > 0 ? static_cast<double>(successes) / total : 0.0;
        out.push_back(s);
    }
    return out;
}

ExperimentOutput run_snr_sweep(const ExperimentConfig &cfg) {
    expect_experiment(cfg, Experiment::snr_sweep);
    return run_recovery(cfg);
}

ExperimentOutput run_oversampling_sweep(const ExperimentConfig &cfg) {
    expect_experiment(cfg, Experiment::oversampling_sweep);
    return run_recovery(cfg);
}

ExperimentOutput run_phase_transition(const ExperimentConfig &cfg) {
    expect_experiment(cfg, Experiment::phase_transition);
    return run_recovery(cfg);
}

// Verification studies ------------------------------------------------------

ExperimentOutput run_certificate_study(const ExperimentConfig &cfg) {
    expect_experiment(cfg, Experiment::certificate_study);
    cfg.validate();

    struct Point {
        Index n;
        Index m;
    };
    std::vector<Point> grid;
    for (Index n : cfg.n_values)
        for (Index m : cfg.m_grid(n))
            grid.push_back({n, m});

    const int count = static_cast<int>(grid.size()) * cfg.trials;
    std::vector<CertificateReport> reports(static_cast<std::size_t>(count));
    std::vector<std::string> errors(static_cast<std::size_t>(count));
    std::vector<double> times(static_cast<std::size_t>(count));
    const SensingModel model = cfg.resolved_ensemble();

    parallel_for(count, [&](int k) {
        const auto &p = grid[static_cast<std::size_t>(k / cfg.trials)];
        const std::uint64_t seed = trial_seed(cfg.seed, k / cfg.trials, k % cfg.trials);
        const auto start = std::chrono::steady_clock::now();
        try {
            with_field(cfg.field, [&]<typename S>() {
                const auto ens = sample_ensemble<S>(p.n, p.m, model, seed);
                const auto x = Signal<S>::basis(p.n, 0);
                const auto built = build_certificate(ens, x, cfg.beta, true);
                reports[static_cast<std::size_t>(k)] =
                    verify_certificate(built.Y, x, built.truncated_fraction);
            });
        } catch (const std::exception &e) {
            errors[static_cast<std::size_t>(k)] = std::string("error: ") + e.what();
        }
        times[static_cast<std::size_t>(k)] = elapsed_ms(start);
    });

    ExperimentOutput out;
    std::ostringstream os, ts;
    os << csv_preamble(cfg)
       << "row_type,grid_index,trial,seed,n,m,beta,status,dist_T,opnorm_Tperp,"
          "truncated_fraction,pass,trials,pass_rate,median_dist_T,median_opnorm_Tperp\n";
    ts << timing_header();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<double> dists, opnorms;
        int passes = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            const std::size_t k = g * static_cast<std::size_t>(cfg.trials) + static_cast<std::size_t>(t);
            const auto &r = reports[k];
            const bool ok = errors[k].empty();
            out.failed_trials += ok ? 0 : 1;
            os << "trial," << g << ',' << t << ',' << trial_seed(cfg.seed, int(g), t) << ','
               << grid[g].n << ',' << grid[g].m << ',' << num(cfg.beta) << ','
               << (ok ? "ok" : csv_escape(errors[k])) << ',' << num(r.dist_T) << ','
               << num(r.opnorm_Tperp) << ',' << num(r.truncated_fraction) << ','
               << (r.pass ? 1 : 0) << ",,,,\n";
            ts << g << ',' << t << ',' << num(times[k]) << '\n';
            if (ok) {
                dists.push_back(r.dist_T);
                opnorms.push_back(r.opnorm_Tperp);
                passes += r.pass ? 1 : 0;
            }
        }
        os << "summary," << g << ",," << cfg.seed << ',' << grid[g].n << ',' << grid[g].m << ','
           << num(cfg.beta) << ",,,,,," << cfg.trials << ','
           << num(static_cast<double>(passes) / cfg.trials) << ',' << num(median(dists)) << ','
           << num(median(opnorms)) << '\n';
    }
    out.csv = os.str();
    out.timing_csv = ts.str();
    return out;
}

ExperimentOutput run_rip1_study(const ExperimentConfig &cfg) {
    expect_experiment(cfg, Experiment::rip1_study);
    cfg.validate();

    std::vector<std::pair<Index, Index>> grid;
    for (Index n : cfg.n_values)
        for (Index m : cfg.m_grid(n))
            grid.emplace_back(n, m);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const int count = static_cast<int>(grid.size()) * cfg.trials;
    std::vector<Rip1Report> reports(static_cast<std::size_t>(count));
    std::vector<double> times(static_cast<std::size_t>(count));
    parallel_for(count, [&](int k) {
        const auto [n, m] = grid[static_cast<std::size_t>(k / cfg.trials)];
        const auto start = std::chrono::steady_clock::now();
        reports[static_cast<std::size_t>(k)] = rip1_check(
            cfg.field, n, m, cfg.rank2_samples, trial_seed(cfg.seed, k / cfg.trials, k % cfg.trials));
        times[static_cast<std::size_t>(k)] = elapsed_ms(start);
    });

    ExperimentOutput out;
    std::ostringstream os, ts;
    os << csv_preamble(cfg)
       << "n,m,field,seeds,rank2_samples,median_delta_observed,min_delta_observed,"
          "max_delta_observed,min_rank2_ratio,median_rank2_ratio\n";
    ts << timing_header();
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<double> deltas, ratios;
        for (int t = 0; t < cfg.trials; ++t) {
            const std::size_t k = g * static_cast<std::size_t>(cfg.trials) + static_cast<std::size_t>(t);
            deltas.push_back(reports[k].delta_observed);
            ratios.push_back(reports[k].rank2_min_ratio);
            ts << g << ',' << t << ',' << num(times[k]) << '\n';
        }
        os << grid[g].first << ',' << grid[g].second << ',' << to_string(cfg.field) << ','
           << cfg.trials << ',' << cfg.rank2_samples << ',' << num(median(deltas)) << ','
           << num(*std::min_element(deltas.begin(), deltas.end())) << ','
           << num(*std::max_element(deltas.begin(), deltas.end())) << ','
           << num(*std::min_element(ratios.begin(), ratios.end())) << ','
           << num(median(ratios)) << '\n';
    }
    out.csv = os.str();
    out.timing_csv = ts.str();
    return out;
}

ExperimentOutput run_f_curves(const ExperimentConfig &cfg) {
    expect_experiment(cfg, Experiment::f_curves);
    cfg.validate();

    const int points = cfg.t_points;
    std::vector<MonteCarloEstimate> mc(static_cast<std::size_t>(points));
    std::vector<double> times(static_cast<std::size_t>(points));
    auto t_at = [&](int k) { return static_cast<double>(k) / (points - 1); };
    parallel_for(points, [&](int k) {
        const auto start = std::chrono::steady_clock::now();
        mc[static_cast<std::size_t>(k)] =
            monte_carlo_xi(t_at(k), cfg.field, cfg.mc_samples, trial_seed(cfg.seed, k, 0));
        times[static_cast<std::size_t>(k)] = elapsed_ms(start);
    });

    ExperimentOutput out;
    std::ostringstream os, ts;
    os << csv_preamble(cfg) << "field,t,f_closed,mc_mean,mc_stderr\n";
    ts << timing_header();
    for (int k = 0; k < points; ++k) {
        const double t = t_at(k);
        const auto &e = mc[static_cast<std::size_t>(k)];
        os << to_string(cfg.field) << ',' << num(t) << ',' << num(f_expectation(cfg.field, t))
           << ',' << num(e.mean) << ',' << num(e.standard_error) << '\n';
        ts << k << ",0," << num(times[static_cast<std::size_t>(k)]) << '\n';
    }
    out.csv = os.str();
    out.timing_csv = ts.str();
    return out;
}

ExperimentOutput run_experiment(const ExperimentConfig &cfg) {
    switch (cfg.experiment) {
    case Experiment::snr_sweep: return run_snr_sweep(cfg);
    case Experiment::oversampling_sweep: return run_oversampling_sweep(cfg);
    case Experiment::phase_transition: return run_phase_transition(cfg);
    case Experiment::certificate_study: return run_certificate_study(cfg);
    case Experiment::rip1_study: return run_rip1_study(cfg);
    case Experiment::f_curves: return run_f_curves(cfg);
    }
    throw ConfigError("unknown experiment");
}

} // namespace phaselift
