// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "phaselift/analysis.hpp"
#include "phaselift/certificate.hpp"
#include "phaselift/experiments.hpp"
#include "phaselift/log.hpp"
#include "phaselift/recovery.hpp"
#include "phaselift/solver.hpp"
#include "support.hpp"

using namespace phaselift;
using testing_support::Gen;
using testing_support::median;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double mean(const std::vector<double> &v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

ExperimentConfig recovery_config(Experiment e, double snr, NoiseModel noise) {
    ExperimentConfig cfg = default_config(e);
    cfg.n_values = {32};
    cfg.m_over_n = {6};
    cfg.field = Field::complex;
    cfg.snr_db = {snr};
    cfg.noise = noise;
    cfg.trials = 10;
    return cfg;
}

Outcome noiseless_recovery() {
    const auto start = std::chrono::steady_clock::now();
    auto cfg = recovery_config(Experiment::phase_transition, INFINITY, NoiseModel::none);
    const auto records = run_recovery_trials(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int ok = 0;
    double worst = 0;
    for (const auto &r : records) {
        ok += !r.failed() && r.rel_mse <= 1e-4;
        worst = std::max(worst, r.rel_mse);
    }
    return {ok >= 9 && secs <= 300.0,
            fmt("%d/10 trials with rel_mse <= 1e-4 (worst %.2e), %.1f s", ok, worst, secs)};
}

Outcome stability() {
    // Vectors on the sphere of radius sqrt(n), the normalization the
    // stability bound is stated for.
    const Index n = 32, m = 192;
    std::vector<double> levels{20, 40, 60}, log_rms;
    std::string detail;
    bool ratio_ok = true;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        std::vector<double> ratios, rms;
        for (int t = 0; t < 10; ++t) {
            const auto seed = trial_seed(2024, static_cast<int>(l), t);
            const auto x = random_signal<Complex>(n, seed);
            const auto ens = sample_ensemble<Complex>(n, m, SensingModel::sphere_radius_sqrt_n, seed);
            const auto data = add_noise(intensities(ens, x),
                                        NoiseSpec{NoiseModel::gaussian, levels[l]}, seed);
            const auto rep = solve_constrained(ens, data, SolverOptions{});
            ratios.push_back((rep.X_hat - HermitianMatrix<Complex>::outer(x)).frobenius_norm() /
                             data.eps);
            rms.push_back(std::sqrt(rel_mse(x, extract_rank1(rep.X_hat).first)));
        }
        const double med = median(ratios);
        ratio_ok = ratio_ok && med <= 10.0;
        log_rms.push_back(std::log10(mean(rms)));
        detail += fmt("%g dB: median ratio %.3f, rms %.3e; ", levels[l], med, mean(rms));
    }
    const double xm = mean(levels), ym = mean(log_rms);
    double sxy = 0, sxx = 0;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        sxy += (levels[l] - xm) * (log_rms[l] - ym);
        sxx += (levels[l] - xm) * (levels[l] - xm);
    }
    const double slope = sxy / sxx;
    detail += fmt("slope %.4f per dB", slope);
    return {ratio_ok && std::abs(slope + 0.05) <= 0.02, detail};
}

Outcome debiasing() {
    std::string detail;
    bool pass = true;
    for (double snr : {5.0, 10.0}) {
        auto cfg = recovery_config(Experiment::snr_sweep, snr, NoiseModel::poisson);
        const auto records = run_recovery_trials(cfg);
        int better = 0;
        for (const auto &r : records)
            better += !r.failed() && std::sqrt(r.rel_mse_debiased) <= std::sqrt(r.rel_mse);
        pass = pass && better >= 7;
        detail += fmt("%g dB: debiased <= raw in %d/10; ", snr, better);
    }
    return {pass, detail};
}

Outcome oversampling() {
    auto cfg = recovery_config(Experiment::oversampling_sweep, 15.0, NoiseModel::poisson);
    cfg.m_over_n = {6, 12};
    const auto summary = summarize(run_recovery_trials(cfg));
    const double ratio = summary[0].mean_rel_rms / summary[1].mean_rel_rms;
    return {ratio >= 1.4 && ratio <= 2.8,
            fmt("rms(6n) %.4f, rms(12n) %.4f, ratio %.3f", summary[0].mean_rel_rms,
                summary[1].mean_rel_rms, ratio)};
}

Outcome expectation_identity() {
    const double r = expectation_check<double>(4, 200000, 1);
    const double c = expectation_check<Complex>(4, 200000, 1);
    return {r <= 0.05 && c <= 0.05, fmt("real %.4f, complex %.4f", r, c)};
}

Outcome f_closed_forms() {
    double real_min = INFINITY, complex_min = INFINITY;
    for (int k = 0; k <= 10000; ++k)
        real_min = std::min(real_min, f_real(k / 1e4));
    for (int k = 0; k <= 1000000; ++k)
        complex_min = std::min(complex_min, f_complex(k / 1e6));
    const double target = 2.0 * (std::sqrt(2.0) - 1.0);
    bool mc_ok = true;
    double worst_z = 0;
    std::uint64_t seed = 1;
    for (Field f : {Field::real, Field::complex})
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const auto e = monte_carlo_xi(t, f, 1000000, seed++);
            const double z = std::abs(e.mean - f_expectation(f, t)) / e.standard_error;
            worst_z = std::max(worst_z, z);
            mc_ok = mc_ok && z <= 4.0;
        }
    return {real_min >= 0.94 && std::abs(complex_min - target) <= 1e-6 && mc_ok,
            fmt("min f_real %.5f, min f_complex %.8f (target %.8f), worst MC z %.2f", real_min,
                complex_min, target, worst_z)};
}

Outcome certificate() {
    const Index n = 64;
    const Index m = 20 * n * static_cast<Index>(std::ceil(std::log(double(n))));
    const auto x = Signal<double>::basis(n, 0);
    int passes = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto ens = sample_ensemble<double>(n, m, SensingModel::real_gaussian, seed);
        const auto b = build_certificate(ens, x, 3.0, true);
        passes += verify_certificate(b.Y, x, b.truncated_fraction).pass;
    }
    std::vector<double> medians;
    for (Index factor : {2, 8, 32}) {
        std::vector<double> d;
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto ens = sample_ensemble<double>(n, factor * n, SensingModel::real_gaussian,
                                                     seed + 100 * static_cast<std::uint64_t>(factor));
            d.push_back(verify_certificate(build_certificate(ens, x, 3.0, true).Y, x).dist_T);
        }
        medians.push_back(median(d));
    }
    const bool decreasing = medians[1] < medians[0] && medians[2] < medians[1];
    return {passes >= 9 && decreasing,
            fmt("m=%ld: %d/10 pass; median dist_T %.3f > %.3f > %.3f", static_cast<long>(m), passes,
                medians[0], medians[1], medians[2])};
}

Outcome rip1() {
    std::vector<double> medians;
    for (Index factor : {4, 16, 64}) {
        std::vector<double> d;
        for (std::uint64_t seed = 1; seed <= 10; ++seed)
            d.push_back(rip1_check(Field::real, 16, factor * 16, 1, seed).delta_observed);
        medians.push_back(median(d));
    }
    const double rr = rip1_check(Field::real, 16, 256 * 16, 500, 7).rank2_min_ratio;
    const double rc = rip1_check(Field::complex, 16, 256 * 16, 500, 7).rank2_min_ratio;
    const bool decreasing = medians[1] < medians[0] && medians[2] < medians[1];
    return {decreasing && rr >= 0.80 && rc >= 0.70,
            fmt("median delta %.3f > %.3f > %.3f; rank-2 ratio real %.3f, complex %.3f",
                medians[0], medians[1], medians[2], rr, rc)};
}

template <typename S>
void solver_oracle_field(Gen &g, double &worst_obj, double &worst_x) {
    for (int k = 0; k < 5; ++k) {
        const Matrix<S> rows = g.matrix<S>(12, 3);
        const SensingEnsemble<S> ens(rows, SensingModel::custom, 0);
        const RealVector b = intensities(ens, g.signal<S>(3)) + 0.1 * g.vector<double>(12);
        const double lambda = 0.05 * eig(apply_A_adjoint(ens, b)).eigenvalues[0];
        const auto fast = solve_regularized(ens, b, lambda, SolverOptions{});
        const auto slow = oracles::plain_proximal_gradient<S>(rows, b, lambda, 100000);
        const double obj = regularized_objective(ens, b, lambda, fast.X_hat);
        worst_obj = std::max(worst_obj, std::abs(obj - slow.objective) / std::abs(slow.objective));
        worst_x = std::max(worst_x, (fast.X_hat.matrix() - slow.x).norm());
    }
}

Outcome solver_oracle() {
    Gen g(909);
    double worst_obj = 0, worst_x = 0;
    solver_oracle_field<double>(g, worst_obj, worst_x);
    solver_oracle_field<Complex>(g, worst_obj, worst_x);
    return {worst_obj <= 1e-6 && worst_x <= 1e-4,
            fmt("5 real + 5 complex instances: worst rel objective gap %.2e, worst Frobenius gap %.2e",
                worst_obj, worst_x)};
}

Outcome metric_oracle() {
    Gen g(1010);
    double worst = 0;
    for (int k = 0; k < 100; ++k) {
        const auto x = g.signal<Complex>(8);
        const auto xh = g.signal<Complex>(8);
        worst = std::max(worst, std::abs(rel_mse(x, xh) - oracles::phase_grid_mse(x, xh, 100000)));
    }
    return {worst <= 1e-8, fmt("100 pairs, worst gap %.2e", worst)};
}

} // namespace

int main() {
    set_warning_sink([](std::string_view) {});
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"noiseless exact recovery", noiseless_recovery},
        {"stability linear in noise level", stability},
        {"debiasing benefit at low SNR", debiasing},
        {"oversampling halves the error", oversampling},
        {"expectation identity", expectation_identity},
        {"f(t) closed forms", f_closed_forms},
        {"dual certificate thresholds", certificate},
        {"l1-isometry trends", rip1},
        {"solver matches plain proximal gradient", solver_oracle},
        {"rel_mse matches phase-grid search", metric_oracle},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
