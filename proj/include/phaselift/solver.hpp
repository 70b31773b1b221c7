#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phaselift/hermitian.hpp"
#include "phaselift/measurement.hpp"

namespace phaselift {

struct SolverOptions {
    int max_iters = 5000;
    /// Stop when ||X_k+1 - X_k||_F <= rel_tol * ||X_k+1||_F.
    double rel_tol = 1e-8;
    /// Step size is step_safety / L.
    double step_safety = 0.9;
    /// Reset momentum whenever the objective increases.
    bool restart = true;

    void validate() const;
};

template <FieldScalar Scalar>
struct SolveReport {
    HermitianMatrix<Scalar> X_hat;
    int iterations = 0;
    /// Best objective seen so far, one entry per iteration.
    std::vector<double> objective_trace{};
    /// ||A(X_hat) - b||_2
    double residual = 0.0;
    double lambda_used = 0.0;
    bool converged = false;
    /// Regularized solves performed (1 for solve_regularized).
    int probes = 0;
    /// Noise bound the constrained solve targeted (0 when unconstrained).
    double eps_used = 0.0;

    double final_objective() const {
        return objective_trace.empty() ? 0.0 : objective_trace.back();
    }
};

/// Optional warm start and cached step-size bound for repeated solves on
/// one ensemble.
template <FieldScalar Scalar>
struct SolveStart {
    std::optional<HermitianMatrix<Scalar>> initial;
    std::optional<double> lipschitz;
};

/// Proximal map of tau * Tr(.) plus the PSD indicator: eigenvalues are
/// shifted down by tau and clipped at zero.
template <FieldScalar Scalar>
HermitianMatrix<Scalar> prox_psd_trace(const HermitianMatrix<Scalar> &v,
                                       double tau);

/// Upper bound on ||A* A||_op by power iteration, inflated by 5%.
template <FieldScalar Scalar>
double estimate_lipschitz(const SensingEnsemble<Scalar> &ens);

/// Smooth part 1/2 ||A(X) - b||^2 plus lambda Tr(X).
template <FieldScalar Scalar>
double regularized_objective(const SensingEnsemble<Scalar> &ens,
                             const RealVector &b, double lambda,
                             const HermitianMatrix<Scalar> &x);

/// Minimizes 1/2 ||A(X) - b||_2^2 + lambda Tr(X) over X >= 0 with an
/// accelerated proximal gradient method (FISTA momentum, restart on
/// objective increase). Starts from X = 0 unless a warm start is given.
template <FieldScalar Scalar>
SolveReport<Scalar> solve_regularized(const SensingEnsemble<Scalar> &ens,
                                      const RealVector &b, double lambda,
                                      const SolverOptions &opts,
                                      const SolveStart<Scalar> &start = {});

/// Trace minimization subject to ||A(X) - b||_2 <= eps.
///
/// Bisects (geometrically) for the largest lambda whose regularized
/// solution is feasible, warm-starting each probe from the previous one.
/// eps is raised to at least 1e-6 ||b||. When even the smallest lambda in
/// the bracket is infeasible, the least-residual solution is returned with
/// converged = false.
template <FieldScalar Scalar>
SolveReport<Scalar> solve_constrained(const SensingEnsemble<Scalar> &ens,
                                      const IntensityData &data,
                                      const SolverOptions &opts);

/// One-line key=value record: iterations, lambda, residual, objective.
template <FieldScalar Scalar>
std::string to_record(const SolveReport<Scalar> &report);

#define PHASELIFT_EXTERN_SOLVER(S)                                             \
    extern template struct SolveReport<S>;                                     \
    extern template HermitianMatrix<S> prox_psd_trace(                         \
        const HermitianMatrix<S> &, double);                                   \
    extern template double estimate_lipschitz(const SensingEnsemble<S> &);     \
    extern template double regularized_objective(                             \
        const SensingEnsemble<S> &, const RealVector &, double,                \
        const HermitianMatrix<S> &);                                           \
    extern template SolveReport<S> solve_regularized(                          \
        const SensingEnsemble<S> &, const RealVector &, double,                \
        const SolverOptions &, const SolveStart<S> &);                         \
    extern template SolveReport<S> solve_constrained(                          \
        const SensingEnsemble<S> &, const IntensityData &,                     \
        const SolverOptions &);                                                \
    extern template std::string to_record(const SolveReport<S> &);

PHASELIFT_EXTERN_SOLVER(double)
PHASELIFT_EXTERN_SOLVER(Complex)
#undef PHASELIFT_EXTERN_SOLVER

} // namespace phaselift
