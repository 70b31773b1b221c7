#include "phaselift/recovery.hpp"

#include <cmath>
#include <sstream>

#include "phaselift/errors.hpp"
#include "phaselift/log.hpp"

namespace phaselift {

template <FieldScalar Scalar>
std::pair<Signal<Scalar>, double> extract_rank1(const HermitianMatrix<Scalar> &x_hat) {
    const auto dec = eig(x_hat);
    const Index n = x_hat.size();
    const double fro = x_hat.frobenius_norm();
    if (dec.eigenvalues[n - 1] < -Tolerances::psd_extraction * fro)
        throw InvalidInput("extract_rank1: input is not positive semidefinite "
                           "(min eigenvalue " +
                           std::to_string(dec.eigenvalues[n - 1]) + ")");
    const double lambda1 = std::max(dec.eigenvalues[0], 0.0);
    if (lambda1 == 0.0)
        return {Signal<Scalar>::zeros(n), 0.0};
    if (n > 1 && dec.eigenvalues[0] - dec.eigenvalues[1] <=
                     Tolerances::eigenvalue_multiplicity * lambda1)
        warn("extract_rank1: top eigenvalue is repeated; the extracted "
             "direction is not unique");
    return {Signal<Scalar>(std::sqrt(lambda1) * dec.eigenvectors.col(0)), lambda1};
}

template <FieldScalar Scalar>
Signal<Scalar> debias(const Signal<Scalar> &x_hat, const RealVector &spectrum) {
    const double norm = x_hat.norm();
    if (norm == 0.0)
        return x_hat;
    if (!spectrum.allFinite())
        throw InvalidInput("debias: spectrum must be finite");
    const double energy = spectrum.cwiseMax(0.0).sum();
    return x_hat.scaled(Scalar(std::sqrt(energy) / norm));
}

template <FieldScalar Scalar>
double rel_mse(const Signal<Scalar> &x, const Signal<Scalar> &x_hat) {
    if (x.size() != x_hat.size())
        throw DimensionMismatch("rel_mse: signals have different lengths");
    const double xx = x.squared_norm();
    if (xx == 0.0)
        throw InvalidInput("rel_mse: reference signal must be nonzero");
    const double cross = std::abs(x_hat.entries().dot(x.entries()));
    return std::max(0.0, (xx + x_hat.squared_norm() - 2.0 * cross) / xx);
}

template <FieldScalar Scalar>
Scalar optimal_phase(const Signal<Scalar> &x, const Signal<Scalar> &x_hat) {
    if (x.size() != x_hat.size())
        throw DimensionMismatch("optimal_phase: signals have different lengths");
    const Scalar w = x_hat.entries().dot(x.entries());
    const double mag = std::abs(w);
    if (mag == 0.0)
        return Scalar(1);
    if constexpr (std::same_as<Scalar, double>)
        return w > 0 ? 1.0 : -1.0;
    else
        return std::conj(w) / mag;
}

template <FieldScalar Scalar>
RecoveryResult<Scalar> recover(const HermitianMatrix<Scalar> &x_hat,
                               const std::optional<Signal<Scalar>> &truth) {
    auto [x1, lambda1] = extract_rank1(x_hat);
    const auto dec = eig(x_hat);
    Signal<Scalar> debiased = debias(x1, dec.eigenvalues);

    RecoveryResult<Scalar> out{.x_hat = x1, .x_hat_debiased = debiased};
    out.lambda1 = lambda1;
    out.spectrum = dec.eigenvalues;
    out.top_eigenvalue_repeated =
        x_hat.size() > 1 && lambda1 > 0.0 &&
        dec.eigenvalues[0] - dec.eigenvalues[1] <=
            Tolerances::eigenvalue_multiplicity * lambda1;
    if (truth) {
        out.rel_mse = rel_mse(*truth, out.x_hat);
        out.rel_rms = std::sqrt(*out.rel_mse);
        out.rel_mse_debiased = rel_mse(*truth, out.x_hat_debiased);
        out.rel_rms_debiased = std::sqrt(*out.rel_mse_debiased);
    }
    return out;
}

template <FieldScalar Scalar>
std::string to_record(const RecoveryResult<Scalar> &r) {
    std::ostringstream os;
    os.precision(17);
    os << "lambda1=" << r.lambda1 << " norm_x_hat=" << r.x_hat.norm()
       << " norm_x_hat_debiased=" << r.x_hat_debiased.norm();
    if (r.rel_mse)
        os << " rel_mse=" << *r.rel_mse << " rel_rms=" << *r.rel_rms
           << " rel_mse_debiased=" << *r.rel_mse_debiased
           << " rel_rms_debiased=" << *r.rel_rms_debiased;
    return os.str();
}

#define PHASELIFT_INSTANTIATE_RECOVERY(S)                                      \
    template struct RecoveryResult<S>;                                         \
    template std::pair<Signal<S>, double> extract_rank1(                       \
        const HermitianMatrix<S> &);                                           \
    template Signal<S> debias(const Signal<S> &, const RealVector &);          \
    template double rel_mse(const Signal<S> &, const Signal<S> &);             \
    template S optimal_phase(const Signal<S> &, const Signal<S> &);            \
    template RecoveryResult<S> recover(const HermitianMatrix<S> &,             \
                                       const std::optional<Signal<S>> &);      \
    template std::string to_record(const RecoveryResult<S> &);

PHASELIFT_INSTANTIATE_RECOVERY(double)
PHASELIFT_INSTANTIATE_RECOVERY(Complex)

} // namespace phaselift
