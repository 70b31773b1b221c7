#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phaselift/analysis.hpp"
#include "phaselift/certificate.hpp"
#include "phaselift/errors.hpp"
#include "phaselift/experiments.hpp"
#include "phaselift/log.hpp"
#include "phaselift/recovery.hpp"
#include "phaselift/solver.hpp"

namespace py = pybind11;
using namespace phaselift;

namespace {

// Arrays cross the boundary as plain Eigen objects; sensing ensembles are
// passed as their m x n row matrix and rebuilt on each call.
template <FieldScalar S>
SensingEnsemble<S> ensemble_of(const Matrix<S> &rows) {
    return SensingEnsemble<S>(rows, SensingModel::custom, 0);
}

SolverOptions options(int max_iters, double rel_tol, double step_safety, bool restart) {
    SolverOptions o;
    o.max_iters = max_iters;
    o.rel_tol = rel_tol;
    o.step_safety = step_safety;
    o.restart = restart;
    return o;
}

template <FieldScalar S>
py::dict report_dict(const SolveReport<S> &r) {
    py::dict d;
    d["X_hat"] = r.X_hat.matrix();
    d["iterations"] = r.iterations;
    d["objective_trace"] = r.objective_trace;
    d["residual"] = r.residual;
    d["lambda_used"] = r.lambda_used;
    d["converged"] = r.converged;
    d["probes"] = r.probes;
    d["eps_used"] = r.eps_used;
    return d;
}

template <FieldScalar S>
py::dict recovery_dict(const RecoveryResult<S> &r) {
    py::dict d;
    d["x_hat"] = r.x_hat.entries();
    d["x_hat_debiased"] = r.x_hat_debiased.entries();
    d["lambda1"] = r.lambda1;
    d["spectrum"] = r.spectrum;
    d["rel_mse"] = r.rel_mse;
    d["rel_rms"] = r.rel_rms;
    d["rel_mse_debiased"] = r.rel_mse_debiased;
    d["rel_rms_debiased"] = r.rel_rms_debiased;
    d["top_eigenvalue_repeated"] = r.top_eigenvalue_repeated;
    return d;
}

py::dict certificate_dict(const CertificateReport &r) {
    py::dict d;
    d["dist_T"] = r.dist_T;
    d["opnorm_Tperp"] = r.opnorm_Tperp;
    d["truncated_fraction"] = r.truncated_fraction;
    d["thresholds"] = r.thresholds;
    d["pass"] = r.pass;
    return d;
}

template <FieldScalar S>
void bind_field(py::module_ &m, const std::string &suffix) {
    m.def(("sample_ensemble" + suffix).c_str(),
          [](Index n, Index count, const std::string &model, std::uint64_t seed) {
              return sample_ensemble<S>(n, count, parse_sensing_model(model), seed).rows();
          },
          py::arg("n"), py::arg("m"), py::arg("model"), py::arg("seed"));
    m.def(("apply_A" + suffix).c_str(), [](const Matrix<S> &rows, const Matrix<S> &x) {
        return apply_A(ensemble_of(rows), HermitianMatrix<S>(x));
    });
    m.def(("apply_A_adjoint" + suffix).c_str(), [](const Matrix<S> &rows, const RealVector &y) {
        return apply_A_adjoint(ensemble_of(rows), y).matrix();
    });
    m.def(("intensities" + suffix).c_str(), [](const Matrix<S> &rows, const Vector<S> &x) {
        return intensities(ensemble_of(rows), Signal<S>(x));
    });
    m.def(("prox_psd_trace" + suffix).c_str(), [](const Matrix<S> &v, double tau) {
        return prox_psd_trace(HermitianMatrix<S>(v), tau).matrix();
    });
    m.def(("estimate_lipschitz" + suffix).c_str(),
          [](const Matrix<S> &rows) { return estimate_lipschitz(ensemble_of(rows)); });
    m.def(("solve_regularized" + suffix).c_str(),
          [](const Matrix<S> &rows, const RealVector &b, double lambda, int max_iters,
             double rel_tol, double step_safety, bool restart) {
              return report_dict(solve_regularized(
                  ensemble_of(rows), b, lambda, options(max_iters, rel_tol, step_safety, restart)));
          },
          py::arg("rows"), py::arg("b"), py::arg("lambda"), py::arg("max_iters") = 5000,
          py::arg("rel_tol") = 1e-8, py::arg("step_safety") = 0.9, py::arg("restart") = true);
    m.def(("solve_constrained" + suffix).c_str(),
          [](const Matrix<S> &rows, const RealVector &b, double eps, int max_iters,
             double rel_tol, double step_safety, bool restart) {
              IntensityData data;
              data.b = b;
              data.nu = RealVector::Zero(b.size());
              data.eps = eps;
              return report_dict(solve_constrained(
                  ensemble_of(rows), data, options(max_iters, rel_tol, step_safety, restart)));
          },
          py::arg("rows"), py::arg("b"), py::arg("eps"), py::arg("max_iters") = 5000,
          py::arg("rel_tol") = 1e-8, py::arg("step_safety") = 0.9, py::arg("restart") = true);
    m.def(("recover" + suffix).c_str(),
          [](const Matrix<S> &x_hat, const std::optional<Vector<S>> &truth) {
              std::optional<Signal<S>> t;
              if (truth)
                  t.emplace(*truth);
              return recovery_dict(recover(HermitianMatrix<S>(x_hat), t));
          },
          py::arg("x_hat"), py::arg("truth") = py::none());
    m.def(("rel_mse" + suffix).c_str(), [](const Vector<S> &x, const Vector<S> &x_hat) {
        return rel_mse(Signal<S>(x), Signal<S>(x_hat));
    });
    m.def(("build_certificate" + suffix).c_str(),
          [](const Matrix<S> &rows, const std::string &model, const Vector<S> &x, double beta,
             bool truncate) {
              const SensingEnsemble<S> ens(rows, parse_sensing_model(model), 0);
              const auto b = build_certificate(ens, Signal<S>(x), beta, truncate);
              py::dict d;
              d["Y"] = b.Y.matrix();
              d["weights"] = b.weights;
              d["truncated_fraction"] = b.truncated_fraction;
              return d;
          },
          py::arg("rows"), py::arg("model"), py::arg("x"), py::arg("beta") = 3.0,
          py::arg("truncate") = true);
    m.def(("verify_certificate" + suffix).c_str(),
          [](const Matrix<S> &y, const Vector<S> &x, double truncated_fraction) {
              return certificate_dict(
                  verify_certificate(HermitianMatrix<S>(y), Signal<S>(x), truncated_fraction));
          },
          py::arg("y"), py::arg("x"), py::arg("truncated_fraction") = 0.0);
    m.def(("expectation_check" + suffix).c_str(),
          [](Index n, std::int64_t samples, std::uint64_t seed) {
              return expectation_check<S>(n, samples, seed);
          });
}

} // namespace

PYBIND11_MODULE(_phaselift, m) {
    m.doc() = "PhaseLift phase retrieval: native core";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    bind_field<double>(m, "_real");
    bind_field<Complex>(m, "_complex");

    m.def("add_noise",
          [](const RealVector &b_clean, const std::string &model, double snr_db,
             std::uint64_t seed, const std::string &reference, double signal_energy) {
              const auto data = add_noise(
                  b_clean,
                  NoiseSpec{parse_noise_model(model), snr_db, parse_snr_reference(reference),
                            signal_energy},
                  seed);
              return py::make_tuple(data.b, data.nu, data.eps);
          },
          py::arg("b_clean"), py::arg("model"), py::arg("snr_db"), py::arg("seed"),
          py::arg("reference") = "intensities", py::arg("signal_energy") = 0.0);
    m.def("f_real", &f_real);
    m.def("f_complex", &f_complex);
    m.def("monte_carlo_xi", [](double t, const std::string &field, std::int64_t samples,
                               std::uint64_t seed) {
        const auto e = monte_carlo_xi(t, field == "real" ? Field::real : Field::complex,
                                      samples, seed);
        return py::make_tuple(e.mean, e.standard_error);
    });
    m.def("rip1_check", [](const std::string &field, Index n, Index count, int trials,
                           std::uint64_t seed) {
        const auto r = rip1_check(field == "real" ? Field::real : Field::complex, n, count,
                                  trials, seed);
        py::dict d;
        d["delta_observed"] = r.delta_observed;
        d["rank2_min_ratio"] = r.rank2_min_ratio;
        d["trials"] = r.trials;
        return d;
    });
    m.def("run_experiment", [](const std::string &experiment, const py::dict &overrides) {
        ExperimentConfig cfg = default_config(parse_experiment(experiment));
        for (auto [key, value] : overrides) {
            const auto k = key.cast<std::string>();
            if (k == "n")
                cfg.n_values = value.cast<std::vector<Index>>();
            else if (k == "m")
                cfg.m_values = value.cast<std::vector<Index>>();
            else if (k == "m_over_n")
                cfg.m_over_n = value.cast<std::vector<double>>();
            else if (k == "snr_db")
                cfg.snr_db = value.cast<std::vector<double>>();
            else if (k == "trials")
                cfg.trials = value.cast<int>();
            else if (k == "seed")
                cfg.seed = value.cast<std::uint64_t>();
            else if (k == "field")
                cfg.field = value.cast<std::string>() == "real" ? Field::real : Field::complex;
            else if (k == "noise")
                cfg.noise = parse_noise_model(value.cast<std::string>());
            else if (k == "max_iters")
                cfg.solver.max_iters = value.cast<int>();
            else
                throw InvalidInput("run_experiment: unknown option '" + k + "'");
        }
        cfg.validate();
        ExperimentOutput out;
        {
            py::gil_scoped_release release;
            out = run_experiment(cfg);
        }
        return py::make_tuple(out.csv, out.timing_csv, out.failed_trials);
    }, py::arg("experiment"), py::arg("overrides") = py::dict());
    m.def("config_hash", [](const std::string &experiment) {
        return default_config(parse_experiment(experiment)).content_hash();
    });
    m.def("silence_warnings", [] { set_warning_sink([](std::string_view) {}); });
}
