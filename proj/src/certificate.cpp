#include "phaselift/certificate.hpp"

#include <cmath>
#include <sstream>

#include "phaselift/errors.hpp"
#include "phaselift/log.hpp"

namespace phaselift {

template <FieldScalar Scalar>
SOperator<Scalar>::SOperator(Index n) : n_(n) {
    if (n < 1)
        throw InvalidInput("SOperator: dimension must be at least 1");
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> SOperator<Scalar>::apply(const HermitianMatrix<Scalar> &x) const {
    if (x.size() != n_)
        throw DimensionMismatch("SOperator::apply: dimension mismatch");
    const double scale = field == Field::real ? 2.0 : 1.0;
    return scale * x + x.trace() * HermitianMatrix<Scalar>::identity(n_);
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> SOperator<Scalar>::inverse(const HermitianMatrix<Scalar> &x) const {
    if (x.size() != n_)
        throw DimensionMismatch("SOperator::inverse: dimension mismatch");
    const double n = static_cast<double>(n_);
    if constexpr (field == Field::real)
        return 0.5 * (x - (x.trace() / (n + 2.0)) * HermitianMatrix<Scalar>::identity(n_));
    else
        return x - (x.trace() / (n + 1.0)) * HermitianMatrix<Scalar>::identity(n_);
}

template <FieldScalar Scalar>
double expectation_check(Index n, std::int64_t samples, std::uint64_t seed,
                         std::span<const HermitianMatrix<Scalar>> tests) {
    if (n < 1)
        throw InvalidInput("expectation_check: n must be at least 1");
    if (samples < 1000)
        throw InvalidInput("expectation_check: need at least 1000 samples");
    for (const auto &t : tests)
        if (t.size() != n)
            throw DimensionMismatch("expectation_check: test matrix has wrong size");

    const SOperator<Scalar> op(n);
    std::vector<Matrix<Scalar>> sums(tests.size(), Matrix<Scalar>::Zero(n, n));

    constexpr std::int64_t chunk = 4096;
    for (std::int64_t first = 0; first < samples; first += chunk) {
        const Index rows = static_cast<Index>(std::min(chunk, samples - first));
        Matrix<Scalar> z(rows, n);
        for (Index k = 0; k < rows; ++k)
            z.row(k) = gaussian_vector<Scalar>(n, seed, Stream::monte_carlo,
                                               std::uint64_t(first + k))
                           .transpose();
        const SensingEnsemble<Scalar> block(std::move(z), SensingModel::custom, seed);
        for (std::size_t t = 0; t < tests.size(); ++t) {
            const RealVector w = detail::apply_A_raw(block, tests[t].matrix());
            sums[t] += detail::apply_A_adjoint_raw(block, w);
        }
    }

    double worst = 0.0;
    for (std::size_t t = 0; t < tests.size(); ++t) {
        const Matrix<Scalar> expected = op.apply(tests[t]).matrix();
        const Matrix<Scalar> mean = sums[t] / Scalar(static_cast<double>(samples));
        const double err = (mean - expected).norm();
        const double ref = expected.norm();
        worst = std::max(worst, ref > 0.0 ? err / ref : err);
    }
    return worst;
}

template <FieldScalar Scalar>
double expectation_check(Index n, std::int64_t samples, std::uint64_t seed) {
    std::vector<HermitianMatrix<Scalar>> tests;
    for (std::uint64_t k = 0; k < 5; ++k) {
        const Vector<Scalar> g = gaussian_vector<Scalar>(n * n, seed, Stream::test_matrices, k);
        tests.emplace_back(Matrix<Scalar>(Eigen::Map<const Matrix<Scalar>>(g.data(), n, n)));
    }
    return expectation_check<Scalar>(n, samples, seed,
                                     std::span<const HermitianMatrix<Scalar>>(tests));
}

template <FieldScalar Scalar>
CertificateBuild<Scalar> build_certificate(const SensingEnsemble<Scalar> &ens,
                                           const Signal<Scalar> &x, double beta,
                                           bool truncate) {
    if (!is_gaussian(ens.model()))
        throw InvalidInput("build_certificate: requires a Gaussian ensemble, got '" +
                           std::string(to_string(ens.model())) + "'");
    if (x.size() != ens.dimension())
        throw DimensionMismatch("build_certificate: signal length does not match ensemble");
    if (std::abs(x.norm() - 1.0) > Tolerances::unit_norm)
        throw InvalidInput("build_certificate: x must have unit norm");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw InvalidInput("build_certificate: beta must be positive");

    const Index n = ens.dimension();
    const Index m = ens.count();
    const double log_n = std::log(static_cast<double>(n));
    if (truncate && 2.0 * beta * log_n < 3.0)
        warn("build_certificate: 2 beta log n < 3; truncation level is below "
             "the regime the certificate analysis assumes");

    const SOperator<Scalar> op(n);
    RealVector weights = apply_A(ens, op.inverse(HermitianMatrix<Scalar>::outer(x)));

    Index dropped = 0;
    if (truncate) {
        const RealVector proj = intensities(ens, x);
        const RealVector energy = ens.rows().rowwise().squaredNorm();
        const double proj_cap = 2.0 * beta * log_n;
        const double energy_cap = 3.0 * static_cast<double>(n);
        for (Index i = 0; i < m; ++i) {
            if (proj[i] > proj_cap || energy[i] > energy_cap) {
                weights[i] = 0.0;
                ++dropped;
            }
        }
    }
    weights /= static_cast<double>(m);

    CertificateBuild<Scalar> out{apply_A_adjoint(ens, weights), weights};
    out.truncated_fraction = static_cast<double>(dropped) / static_cast<double>(m);
    return out;
}

std::pair<double, double> certificate_thresholds(Field field) {
    return field == Field::real ? std::pair{1.0 / 3.0, 0.5} : std::pair{1.0 / 5.0, 0.5};
}

template <FieldScalar Scalar>
CertificateReport verify_certificate(const HermitianMatrix<Scalar> &y,
                                     const Signal<Scalar> &x,
                                     double truncated_fraction) {
    const TangentSpace<Scalar> ts(x);
    CertificateReport r;
    r.dist_T = (ts.project(y) - HermitianMatrix<Scalar>::outer(x)).frobenius_norm();
    r.opnorm_Tperp = operator_norm(ts.project_perp(y));
    r.truncated_fraction = truncated_fraction;
    r.thresholds = certificate_thresholds(field_of<Scalar>);
    r.pass = r.dist_T <= r.thresholds.first && r.opnorm_Tperp <= r.thresholds.second;
    return r;
}

std::string certificate_csv_header() {
    return "dist_T,opnorm_Tperp,truncated_fraction,threshold_T,threshold_Tperp,pass";
}

std::string to_csv_row(const CertificateReport &r) {
    std::ostringstream os;
    os.precision(17);
    os << r.dist_T << ',' << r.opnorm_Tperp << ',' << r.truncated_fraction << ','
       << r.thresholds.first << ',' << r.thresholds.second << ',' << (r.pass ? 1 : 0);
    return os.str();
}

#define PHASELIFT_INSTANTIATE_CERTIFICATE(S)                                   \
    template class SOperator<S>;                                               \
    template double expectation_check<S>(Index, std::int64_t, std::uint64_t,   \
                                         std::span<const HermitianMatrix<S>>); \
    template double expectation_check<S>(Index, std::int64_t, std::uint64_t);  \
    template CertificateBuild<S> build_certificate(                            \
        const SensingEnsemble<S> &, const Signal<S> &, double, bool);          \
    template CertificateReport verify_certificate(const HermitianMatrix<S> &,  \
                                                  const Signal<S> &, double);

PHASELIFT_INSTANTIATE_CERTIFICATE(double)
PHASELIFT_INSTANTIATE_CERTIFICATE(Complex)

} // namespace phaselift
