#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phaselift/errors.hpp"
#include "phaselift/measurement.hpp"
#include "phaselift/solver.hpp"

namespace phaselift {

enum class Experiment {
    snr_sweep,
    oversampling_sweep,
    phase_transition,
    certificate_study,
    rip1_study,
    f_curves,
};

std::string_view to_string(Experiment e);
Experiment parse_experiment(std::string_view name);

/// Invalid experiment configuration (maps to CLI exit code 2).
class ConfigError : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// Declarative description of one batch run. The grid is the Cartesian
/// product n_values x m-grid x snr_db (recovery experiments) or
/// n_values x m-grid (certificate and RIP-1 studies). The m-grid is
/// m_values when given, else round(r n) for r in m_over_n.
struct ExperimentConfig {
    Experiment experiment = Experiment::snr_sweep;
    std::vector<Index> n_values{128};
    std::vector<double> m_over_n{6.0};
    /// Absolute measurement counts; when nonempty they replace m_over_n.
    std::vector<Index> m_values;
    Field field = Field::complex;
    /// Sensing model; unset picks the unit sphere of `field` for recovery
    /// experiments and the Gaussian model for the certificate study.
    std::optional<SensingModel> ensemble;
    NoiseModel noise = NoiseModel::poisson;
    std::vector<double> snr_db{5.0, 25.0, 50.0, 75.0, 100.0};
    SnrReference snr_reference = SnrReference::intensities;
    int trials = 10;
    std::uint64_t seed = 1;

    /// Phase-transition success: rel_mse <= this.
    double success_threshold = 1e-5;
    /// Certificate truncation level.
    double beta = 3.0;
    /// Rank-2 samples per RIP-1 check.
    int rank2_samples = 500;
    /// Monte Carlo draws per t in the f-curves table.
    std::int64_t mc_samples = 1'000'000;
    int t_points = 101;

    SolverOptions solver;

    /// Throws ConfigError.
    void validate() const;
    /// Stable key=value echo of every result-affecting field.
    std::string canonical() const;
    /// git-style SHA-1 ("blob <len>\0<text>") of canonical().
    std::string content_hash() const;
    /// Measurement counts used at dimension n, in grid order.
    std::vector<Index> m_grid(Index n) const;
    /// Sensing model actually used.
    SensingModel resolved_ensemble() const;
};

/// Per-experiment defaults: snr-sweep (n=128, m=6n, SNR {5,25,50,75,100}
/// dB, Poisson), oversampling-sweep (m/n in 5..22, 15 dB), phase-transition
/// (noiseless), and the verification studies.
ExperimentConfig default_config(Experiment e);

/// One recovery trial.
struct TrialRecord {
    Experiment experiment = Experiment::snr_sweep;
    int grid_index = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    Index n = 0;
    Index m = 0;
    double snr_db = 0.0;
    NoiseModel noise = NoiseModel::none;
    double rel_mse = 0.0;
    double rel_mse_debiased = 0.0;
    double residual = 0.0;
    double eps = 0.0;
    double lambda = 0.0;
    int iterations = 0;
    bool converged = false;
    bool success = false;
    /// "ok" or "error: <message>".
    std::string status = "ok";
    double wall_time_ms = 0.0;

    bool failed() const { return status != "ok"; }
};

/// Averages over the trials of one grid point.
struct SummaryRecord {
    int grid_index = 0;
    Index n = 0;
    Index m = 0;
    double snr_db = 0.0;
    int trials = 0;
    double mean_rel_mse = 0.0;
    double mean_rel_rms = 0.0;
    double mean_rel_rms_debiased = 0.0;
    double success_rate = 0.0;
};

/// CSV text plus the timing sidecar. Wall times live in the sidecar so
/// the main table is a pure function of the configuration.
struct ExperimentOutput {
    std::string csv;
    std::string timing_csv;
    int failed_trials = 0;
};

/// Seed for (grid point, trial), derived from the configuration seed by
/// SplitMix64 mixing.
std::uint64_t trial_seed(std::uint64_t base, int grid_index, int trial);

/// Test signal with i.i.d. N(0, 1) entries (real) or a + ib with
/// a, b ~ N(0, 1) (complex).
template <FieldScalar Scalar>
Signal<Scalar> random_signal(Index n, std::uint64_t seed);

/// Runs every trial of a recovery experiment (snr-sweep,
/// oversampling-sweep, phase-transition). Records are ordered by
/// (grid index, trial) whatever the thread count.
std::vector<TrialRecord> run_recovery_trials(const ExperimentConfig &cfg);

std::vector<SummaryRecord> summarize(const std::vector<TrialRecord> &records);

ExperimentOutput run_snr_sweep(const ExperimentConfig &cfg);
ExperimentOutput run_oversampling_sweep(const ExperimentConfig &cfg);
ExperimentOutput run_phase_transition(const ExperimentConfig &cfg);
ExperimentOutput run_certificate_study(const ExperimentConfig &cfg);
ExperimentOutput run_rip1_study(const ExperimentConfig &cfg);
ExperimentOutput run_f_curves(const ExperimentConfig &cfg);

/// Dispatches on cfg.experiment.
ExperimentOutput run_experiment(const ExperimentConfig &cfg);

/// Worker count from PHASELIFT_THREADS, defaulting to the hardware
/// concurrency.
int worker_threads();

/// Comment lines that open every CSV: schema version, config echo, hash.
std::string csv_preamble(const ExperimentConfig &cfg);

inline constexpr int kCsvSchemaVersion = 1;

} // namespace phaselift
