#include "phaselift/solver.hpp"

#include <cmath>
#include <sstream>

#include "phaselift/errors.hpp"

namespace phaselift {

void SolverOptions::validate() const {
    if (max_iters < 1)
        throw InvalidInput("SolverOptions: max_iters must be positive");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw InvalidInput("SolverOptions: rel_tol must lie in (0, 1)");
    if (!(step_safety > 0.0 && step_safety <= 1.0))
        throw InvalidInput("SolverOptions: step_safety must lie in (0, 1]");
}

namespace {

template <FieldScalar Scalar>
Matrix<Scalar> prox_raw(const Matrix<Scalar> &v, double tau) {
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(v);
    if (es.info() != Eigen::Success)
        throw NumericalError("prox_psd_trace: eigensolver failed");
    const RealVector &lambda = es.eigenvalues(); // ascending
    const Index n = lambda.size();
    Index first = n;
    while (first > 0 && lambda[first - 1] - tau > 0.0)
        --first;
    const Index keep = n - first;
    if (keep == 0)
        return Matrix<Scalar>::Zero(n, n);
    const auto u = es.eigenvectors().rightCols(keep);
    const RealVector shrunk = lambda.tail(keep).array() - tau;
    Matrix<Scalar> out = u * shrunk.cast<Scalar>().asDiagonal() * u.adjoint();
    return Scalar(0.5) * (out + out.adjoint());
}

double smooth_value(const RealVector &ax, const RealVector &b) {
    return 0.5 * (ax - b).squaredNorm();
}

template <FieldScalar Scalar>
double trace_of(const Matrix<Scalar> &x) {
    return std::real(x.trace());
}

} // namespace

template <FieldScalar Scalar>
HermitianMatrix<Scalar> prox_psd_trace(const HermitianMatrix<Scalar> &v,
                                       double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau))
        throw InvalidInput("prox_psd_trace: tau must be finite and >= 0");
    return HermitianMatrix<Scalar>(prox_raw<Scalar>(v.matrix(), tau));
}

template <FieldScalar Scalar>
double estimate_lipschitz(const SensingEnsemble<Scalar> &ens) {
    const Index n = ens.dimension();
    // Identity plus a fixed perturbation, so the start overlaps every
    // eigendirection with probability one.
    Matrix<Scalar> x = Matrix<Scalar>::Identity(n, n);
    {
        const Vector<Scalar> g =
            gaussian_vector<Scalar>(n * n, 0x5eed, Stream::operator_start, 0);
        const Matrix<Scalar> p = Eigen::Map<const Matrix<Scalar>>(g.data(), n, n);
        x += Scalar(0.1) * (p + p.adjoint());
    }
    x /= x.norm();

    double estimate = 0.0;
    for (int it = 0; it < Tolerances::power_iteration_max_iters; ++it) {
        Matrix<Scalar> w =
            detail::apply_A_adjoint_raw(ens, detail::apply_A_raw(ens, x));
        const double rayleigh = std::real(x.cwiseProduct(w.conjugate()).sum());
        const double wnorm = w.norm();
        if (wnorm == 0.0)
            return 0.0;
        const bool done =
            it > 0 && std::abs(rayleigh - estimate) <=
                          Tolerances::power_iteration_rel_tol * rayleigh;
        estimate = rayleigh;
        if (done)
            return Tolerances::lipschitz_inflation * estimate;
        x = w / wnorm;
    }
    throw LipschitzNotConverged(
        "estimate_lipschitz: power iteration did not converge",
        Tolerances::lipschitz_inflation * estimate);
}

template <FieldScalar Scalar>
double regularized_objective(const SensingEnsemble<Scalar> &ens,
                             const RealVector &b, double lambda,
                             const HermitianMatrix<Scalar> &x) {
    if (b.size() != ens.count())
        throw DimensionMismatch("regularized_objective: b has wrong length");
    return smooth_value(apply_A(ens, x), b) + lambda * x.trace();
}

template <FieldScalar Scalar>
SolveReport<Scalar> solve_regularized(const SensingEnsemble<Scalar> &ens,
                                      const RealVector &b, double lambda,
                                      const SolverOptions &opts,
                                      const SolveStart<Scalar> &start) {
    opts.validate();
    if (b.size() != ens.count())
        throw DimensionMismatch("solve_regularized: b has " +
                                std::to_string(b.size()) + " entries, ensemble has " +
                                std::to_string(ens.count()) + " vectors");
    if (!b.allFinite())
        throw InvalidInput("solve_regularized: b must be finite");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw InvalidInput("solve_regularized: lambda must be finite and >= 0");

    const Index n = ens.dimension();
    const double lipschitz = start.lipschitz ? *start.lipschitz : estimate_lipschitz(ens);

    Matrix<Scalar> x = Matrix<Scalar>::Zero(n, n);
    if (start.initial) {
        if (start.initial->size() != n)
            throw DimensionMismatch("solve_regularized: warm start has wrong size");
        x = prox_raw<Scalar>(start.initial->matrix(), 0.0);
    }
    RealVector ax = detail::apply_A_raw(ens, x);
    double objective = smooth_value(ax, b) + lambda * trace_of(x);

    SolveReport<Scalar> report{.X_hat = HermitianMatrix<Scalar>::zero(n)};
    report.lambda_used = lambda;
    report.probes = 1;

    if (lipschitz == 0.0) {
        // A vanishes identically; the trace term alone is minimized at 0.
        report.X_hat = HermitianMatrix<Scalar>::zero(n);
        report.residual = b.norm();
        report.objective_trace.push_back(0.5 * b.squaredNorm());
        report.converged = true;
        return report;
    }

    const double step = opts.step_safety / lipschitz;
    Matrix<Scalar> y = x;
    RealVector ay = ax;
    double theta = 1.0;
    bool momentum = false;

    Matrix<Scalar> best_x = x;
    RealVector best_ax = ax;
    double best = objective;
    report.objective_trace.reserve(static_cast<std::size_t>(opts.max_iters));

    int iter = 0;
    while (iter < opts.max_iters) {
        ++iter;
        const Matrix<Scalar> grad = detail::apply_A_adjoint_raw(ens, RealVector(ay - b));
        Matrix<Scalar> next = prox_raw<Scalar>(y - Scalar(step) * grad, step * lambda);
        RealVector a_next = detail::apply_A_raw(ens, next);
        const double next_obj = smooth_value(a_next, b) + lambda * trace_of(next);
        if (!std::isfinite(next_obj))
            throw NumericalError("solve_regularized: objective diverged at iteration " +
                                 std::to_string(iter));

        if (opts.restart && momentum && next_obj > objective) {
            // Drop the momentum and retry from the last accepted iterate.
            y = x;
            ay = ax;
            theta = 1.0;
            momentum = false;
            report.objective_trace.push_back(best);
            continue;
        }

        const double diff = (next - x).norm();
        const double scale = std::max(next.norm(), x.norm());

        const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        const double beta = (theta - 1.0) / theta_next;
        y = next + Scalar(beta) * (next - x);
        ay = a_next + beta * (a_next - ax);
        theta = theta_next;
        momentum = beta > 0.0;

        x = std::move(next);
        ax = std::move(a_next);
        objective = next_obj;
        if (objective < best) {
            best = objective;
            best_x = x;
            best_ax = ax;
        }
        report.objective_trace.push_back(best);

        if (diff == 0.0 || diff <= opts.rel_tol * scale) {
            report.converged = true;
            break;
        }
    }

    report.iterations = iter;
    report.X_hat = HermitianMatrix<Scalar>(best_x);
    report.residual = (best_ax - b).norm();
    return report;
}

template <FieldScalar Scalar>
SolveReport<Scalar> solve_constrained(const SensingEnsemble<Scalar> &ens,
                                      const IntensityData &data,
                                      const SolverOptions &opts) {
    opts.validate();
    data.validate();
    const RealVector &b = data.b;
    if (b.size() != ens.count())
        throw DimensionMismatch("solve_constrained: data length does not match ensemble");

    const Index n = ens.dimension();
    const double b_norm = b.norm();
    const double eps = std::max(data.eps, Tolerances::noiseless_eps_factor * b_norm);
    const double feasible_residual = eps * (1.0 + Tolerances::residual_slack);

    // Zero is feasible and has the smallest trace of all PSD matrices.
    const double lambda_hi = std::max(0.0, eig(apply_A_adjoint(ens, b)).eigenvalues[0]);
    if (b_norm <= eps || lambda_hi == 0.0) {
        SolveReport<Scalar> zero{.X_hat = HermitianMatrix<Scalar>::zero(n)};
        zero.residual = b_norm;
        zero.lambda_used = lambda_hi;
        zero.converged = b_norm <= feasible_residual;
        zero.objective_trace.push_back(0.5 * b_norm * b_norm);
        zero.eps_used = eps;
        return zero;
    }

    SolveStart<Scalar> start;
    start.lipschitz = estimate_lipschitz(ens);

    int probes = 0;
    int total_iters = 0;
    auto probe = [&](double lambda) {
        auto r = solve_regularized(ens, b, lambda, opts, start);
        ++probes;
        total_iters += r.iterations;
        start.initial = r.X_hat;
        return r;
    };

    double lo = lambda_hi * Tolerances::lambda_bracket_ratio;
    double hi = lambda_hi;
    SolveReport<Scalar> best = probe(lo);
    if (best.residual > feasible_residual) {
        best.converged = false;
    } else {
        while (hi / lo > 1.0 + Tolerances::lambda_rel_tol &&
               probes < Tolerances::max_bisection_probes) {
            const double mid = std::sqrt(lo * hi);
            SolveReport<Scalar> r = probe(mid);
            if (r.residual <= feasible_residual) {
                lo = mid;
                best = std::move(r);
            } else {
                hi = mid;
            }
        }
        best.converged = true;
    }
    best.iterations = total_iters;
    best.probes = probes;
    best.eps_used = eps;
    return best;
}

template <FieldScalar Scalar>
std::string to_record(const SolveReport<Scalar> &report) {
    std::ostringstream os;
    os.precision(17);
    os << "iterations=" << report.iterations << " probes=" << report.probes
       << " lambda=" << report.lambda_used << " residual=" << report.residual
       << " eps=" << report.eps_used << " objective=" << report.final_objective()
       << " converged=" << (report.converged ? "true" : "false");
    return os.str();
}

#define PHASELIFT_INSTANTIATE_SOLVER(S)                                        \
    template struct SolveReport<S>;                                            \
    template HermitianMatrix<S> prox_psd_trace(const HermitianMatrix<S> &,     \
                                               double);                        \
    template double estimate_lipschitz(const SensingEnsemble<S> &);            \
    template double regularized_objective(const SensingEnsemble<S> &,          \
                                          const RealVector &, double,          \
                                          const HermitianMatrix<S> &);         \
    template SolveReport<S> solve_regularized(                                 \
        const SensingEnsemble<S> &, const RealVector &, double,                \
        const SolverOptions &, const SolveStart<S> &);                         \
    template SolveReport<S> solve_constrained(const SensingEnsemble<S> &,      \
                                              const IntensityData &,           \
                                              const SolverOptions &);          \
    template std::string to_record(const SolveReport<S> &);

PHASELIFT_INSTANTIATE_SOLVER(double)
PHASELIFT_INSTANTIATE_SOLVER(Complex)

} // namespace phaselift
