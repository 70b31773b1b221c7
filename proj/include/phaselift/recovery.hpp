#pragma once

#include <optional>
#include <string>
#include <utility>

#include "phaselift/hermitian.hpp"

namespace phaselift {

template <FieldScalar Scalar>
struct RecoveryResult {
    /// sqrt(lambda_1) u_1
    Signal<Scalar> x_hat;
    /// x_hat rescaled to carry the energy of the whole (clipped) spectrum.
    Signal<Scalar> x_hat_debiased;
    double lambda1 = 0.0;
    /// Eigenvalues of X_hat, descending.
    RealVector spectrum{};
    /// Set when a ground truth was supplied.
    std::optional<double> rel_mse{};
    std::optional<double> rel_rms{};
    std::optional<double> rel_mse_debiased{};
    std::optional<double> rel_rms_debiased{};
    /// Top eigenvalue repeated to within 1e-9 relative; the extracted
    /// direction is then an arbitrary member of the eigenspace.
    bool top_eigenvalue_repeated = false;
};

/// Largest rank-1 component (sqrt(lambda_1) u_1, lambda_1) of a PSD
/// estimate. Throws InvalidInput when the smallest eigenvalue is below
/// -1e-6 ||X||_F.
template <FieldScalar Scalar>
std::pair<Signal<Scalar>, double> extract_rank1(const HermitianMatrix<Scalar> &x_hat);

/// s x_hat with s = sqrt(sum_k max(lambda_k, 0)) / ||x_hat||. A zero x_hat
/// is returned unchanged.
template <FieldScalar Scalar>
Signal<Scalar> debias(const Signal<Scalar> &x_hat, const RealVector &spectrum);

/// min over |c| = 1 of ||c x - x_hat||^2 / ||x||^2, evaluated in closed
/// form as (||x||^2 + ||x_hat||^2 - 2 |<x_hat, x>|) / ||x||^2.
template <FieldScalar Scalar>
double rel_mse(const Signal<Scalar> &x, const Signal<Scalar> &x_hat);

/// The unimodular c attaining the minimum in rel_mse.
template <FieldScalar Scalar>
Scalar optimal_phase(const Signal<Scalar> &x, const Signal<Scalar> &x_hat);

/// Extraction, debiasing and (optionally) error metrics in one pass.
template <FieldScalar Scalar>
RecoveryResult<Scalar> recover(const HermitianMatrix<Scalar> &x_hat,
                               const std::optional<Signal<Scalar>> &truth = std::nullopt);

/// Key=value record of the scalar fields.
template <FieldScalar Scalar>
std::string to_record(const RecoveryResult<Scalar> &result);

#define PHASELIFT_EXTERN_RECOVERY(S)                                           \
    extern template struct RecoveryResult<S>;                                  \
    extern template std::pair<Signal<S>, double> extract_rank1(                \
        const HermitianMatrix<S> &);                                           \
    extern template Signal<S> debias(const Signal<S> &, const RealVector &);   \
    extern template double rel_mse(const Signal<S> &, const Signal<S> &);      \
    extern template S optimal_phase(const Signal<S> &, const Signal<S> &);     \
    extern template RecoveryResult<S> recover(                                 \
        const HermitianMatrix<S> &, const std::optional<Signal<S>> &);         \
    extern template std::string to_record(const RecoveryResult<S> &);

PHASELIFT_EXTERN_RECOVERY(double)
PHASELIFT_EXTERN_RECOVERY(Complex)
#undef PHASELIFT_EXTERN_RECOVERY

} // namespace phaselift
