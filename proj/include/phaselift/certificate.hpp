#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "phaselift/hermitian.hpp"
#include "phaselift/measurement.hpp"

namespace phaselift {

/// Expectation of (1/m) A*A under the Gaussian model.
///
/// Real field: S(X) = 2X + Tr(X) I, complex field: S(X) = X + Tr(X) I.
template <FieldScalar Scalar>
class SOperator {
  public:
    static constexpr Field field = field_of<Scalar>;

    explicit SOperator(Index n);

    Index size() const { return n_; }

    HermitianMatrix<Scalar> apply(const HermitianMatrix<Scalar> &x) const;
    /// Real: (X - Tr(X)/(n+2) I) / 2. Complex: X - Tr(X)/(n+1) I.
    HermitianMatrix<Scalar> inverse(const HermitianMatrix<Scalar> &x) const;

  private:
    Index n_;
};

template <FieldScalar Scalar>
HermitianMatrix<Scalar> s_apply(const SOperator<Scalar> &op,
                                const HermitianMatrix<Scalar> &x) {
    return op.apply(x);
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> s_inverse(const SOperator<Scalar> &op,
                                  const HermitianMatrix<Scalar> &x) {
    return op.inverse(x);
}

/// Monte Carlo check of E[<z z*, X> z z*] = S(X) over N Gaussian draws.
/// Returns the largest relative Frobenius deviation over the test matrices
/// (absolute deviation when S(X) = 0).
template <FieldScalar Scalar>
double expectation_check(Index n, std::int64_t samples, std::uint64_t seed,
                         std::span<const HermitianMatrix<Scalar>> tests);

/// Same, against five random Hermitian test matrices derived from `seed`.
template <FieldScalar Scalar>
double expectation_check(Index n, std::int64_t samples, std::uint64_t seed);

template <FieldScalar Scalar>
struct CertificateBuild {
    HermitianMatrix<Scalar> Y;
    /// Y = A*(weights) / m, with dropped terms carrying weight zero.
    RealVector weights;
    double truncated_fraction = 0.0;
};

/// Y = (1/m) sum_i <S^-1(x x*), z_i z_i*> 1_{E_i} z_i z_i*, where
/// E_i = { |<x, z_i>| <= sqrt(2 beta log n) } and { ||z_i|| <= sqrt(3n) }.
/// With truncate = false every term is kept. Requires a Gaussian ensemble
/// and a unit-norm x.
template <FieldScalar Scalar>
CertificateBuild<Scalar> build_certificate(const SensingEnsemble<Scalar> &ens,
                                           const Signal<Scalar> &x,
                                           double beta = 3.0,
                                           bool truncate = true);

struct CertificateReport {
    /// ||P_T(Y) - x x*||_F
    double dist_T = 0.0;
    /// ||P_T_perp(Y)||_op
    double opnorm_Tperp = 0.0;
    double truncated_fraction = 0.0;
    /// (bound on dist_T, bound on opnorm_Tperp)
    std::pair<double, double> thresholds{0.0, 0.0};
    bool pass = false;
};

/// (1/3, 1/2) in the real field, (1/5, 1/2) in the complex field.
std::pair<double, double> certificate_thresholds(Field field);

template <FieldScalar Scalar>
CertificateReport verify_certificate(const HermitianMatrix<Scalar> &y,
                                     const Signal<Scalar> &x,
                                     double truncated_fraction = 0.0);

/// CSV header and row for a report.
std::string certificate_csv_header();
std::string to_csv_row(const CertificateReport &report);

#define PHASELIFT_EXTERN_CERTIFICATE(S)                                        \
    extern template class SOperator<S>;                                        \
    extern template double expectation_check<S>(                               \
        Index, std::int64_t, std::uint64_t,                                    \
        std::span<const HermitianMatrix<S>>);                                  \
    extern template double expectation_check<S>(Index, std::int64_t,           \
                                                std::uint64_t);                \
    extern template CertificateBuild<S> build_certificate(                     \
        const SensingEnsemble<S> &, const Signal<S> &, double, bool);          \
    extern template CertificateReport verify_certificate(                      \
        const HermitianMatrix<S> &, const Signal<S> &, double);

PHASELIFT_EXTERN_CERTIFICATE(double)
PHASELIFT_EXTERN_CERTIFICATE(Complex)
#undef PHASELIFT_EXTERN_CERTIFICATE

} // namespace phaselift
