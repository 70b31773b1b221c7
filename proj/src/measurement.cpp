#include "phaselift/measurement.hpp"

#include <cmath>
#include <string>

#include "phaselift/errors.hpp"

namespace phaselift {

std::string_view to_string(SensingModel model) {
    switch (model) {
    case SensingModel::real_gaussian: return "real-gaussian";
    case SensingModel::complex_gaussian: return "complex-gaussian";
    case SensingModel::real_unit_sphere: return "real-unit-sphere";
    case SensingModel::complex_unit_sphere: return "complex-unit-sphere";
    case SensingModel::sphere_radius_sqrt_n: return "sphere-radius-sqrt-n";
    case SensingModel::custom: return "custom";
    }
    return "unknown";
}

SensingModel parse_sensing_model(std::string_view name) {
    for (auto m : {SensingModel::real_gaussian, SensingModel::complex_gaussian,
                   SensingModel::real_unit_sphere,
                   SensingModel::complex_unit_sphere,
                   SensingModel::sphere_radius_sqrt_n, SensingModel::custom})
        if (to_string(m) == name)
            return m;
    throw InvalidInput("unknown sensing model '" + std::string(name) + "'");
}

bool model_matches_field(SensingModel model, Field field) {
    switch (model) {
    case SensingModel::real_gaussian:
    case SensingModel::real_unit_sphere: return field == Field::real;
    case SensingModel::complex_gaussian:
    case SensingModel::complex_unit_sphere: return field == Field::complex;
    case SensingModel::sphere_radius_sqrt_n:
    case SensingModel::custom: return true;
    }
    return false;
}

bool is_gaussian(SensingModel model) {
    return model == SensingModel::real_gaussian ||
           model == SensingModel::complex_gaussian;
}

// Ensemble ----------------------------------------------------------------

template <FieldScalar Scalar>
SensingEnsemble<Scalar>::SensingEnsemble(Matrix<Scalar> rows,
                                         SensingModel model, std::uint64_t seed)
    : rows_(std::move(rows)), model_(model), seed_(seed) {
    if (rows_.rows() < 1)
        throw InvalidInput("SensingEnsemble: need at least one vector (m >= 1)");
    if (rows_.cols() < 1)
        throw InvalidInput("SensingEnsemble: vectors must have length >= 1");
    if (!rows_.allFinite())
        throw InvalidInput("SensingEnsemble: entries must be finite");
    if (!model_matches_field(model_, field))
        throw InvalidInput("SensingEnsemble: model '" +
                           std::string(to_string(model_)) +
                           "' does not match field " +
                           std::string(to_string(field)));
    conj_rows_ = rows_.conjugate();
}

template <FieldScalar Scalar>
Vector<Scalar> gaussian_vector(Index n, std::uint64_t seed, Stream purpose,
                               std::uint64_t index) {
    RandomStream rng(seed, purpose, index);
    Vector<Scalar> v(n);
    for (Index j = 0; j < n; ++j) {
        if constexpr (std::same_as<Scalar, double>) {
            v[j] = rng.normal();
        } else {
            const double re = rng.normal();
            const double im = rng.normal();
            v[j] = Complex(re, im) * std::sqrt(0.5);
        }
    }
    return v;
}

template <FieldScalar Scalar>
SensingEnsemble<Scalar> sample_ensemble(Index n, Index m, SensingModel model,
                                        std::uint64_t seed) {
    if (n < 1 || m < 1)
        throw InvalidInput("sample_ensemble: need n >= 1 and m >= 1");
    if (model == SensingModel::custom)
        throw InvalidInput("sample_ensemble: 'custom' ensembles are built "
                           "from explicit vectors");
    if (!model_matches_field(model, field_of<Scalar>))
        throw InvalidInput("sample_ensemble: model '" +
                           std::string(to_string(model)) +
                           "' does not match the requested field");

    double radius = 0.0;
    if (model == SensingModel::real_unit_sphere ||
        model == SensingModel::complex_unit_sphere)
        radius = 1.0;
    else if (model == SensingModel::sphere_radius_sqrt_n)
        radius = std::sqrt(static_cast<double>(n));

    Matrix<Scalar> rows(m, n);
    for (Index i = 0; i < m; ++i) {
        Vector<Scalar> z =
            gaussian_vector<Scalar>(n, seed, Stream::sensing, std::uint64_t(i));
        if (radius > 0.0) {
            double norm = z.norm();
            if (norm == 0.0) {
                // Second attempt from a disjoint index range.
                z = gaussian_vector<Scalar>(n, seed, Stream::sensing,
                                            std::uint64_t(i) | (1ull << 31));
                norm = z.norm();
                if (norm == 0.0)
                    throw NumericalError("sample_ensemble: zero-norm draw");
            }
            z *= radius / norm;
        }
        rows.row(i) = z.transpose();
    }
    return SensingEnsemble<Scalar>(std::move(rows), model, seed);
}

// Operators ---------------------------------------------------------------

namespace detail {

template <FieldScalar Scalar>
RealVector apply_A_raw(const SensingEnsemble<Scalar> &ens,
                       const Matrix<Scalar> &x) {
    // (conj(Z) X)(i, k) = sum_j conj(z_ij) X_jk, then contract with z_ik.
    const Matrix<Scalar> zx = ens.conjugate_rows() * x;
    return zx.cwiseProduct(ens.rows()).rowwise().sum().real();
}

template <FieldScalar Scalar>
Matrix<Scalar> apply_A_adjoint_raw(const SensingEnsemble<Scalar> &ens,
                                   const RealVector &y) {
    const Matrix<Scalar> weighted =
        y.cast<Scalar>().asDiagonal() * ens.conjugate_rows();
    return ens.rows().transpose() * weighted;
}

} // namespace detail

template <FieldScalar Scalar>
RealVector apply_A(const SensingEnsemble<Scalar> &ens,
                   const HermitianMatrix<Scalar> &x) {
    if (x.size() != ens.dimension())
        throw DimensionMismatch("apply_A: matrix is " + std::to_string(x.size()) +
                                "x" + std::to_string(x.size()) +
                                ", ensemble dimension is " +
                                std::to_string(ens.dimension()));
    return detail::apply_A_raw(ens, x.matrix());
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> apply_A_adjoint(const SensingEnsemble<Scalar> &ens,
                                        const RealVector &y) {
    if (y.size() != ens.count())
        throw DimensionMismatch("apply_A_adjoint: got " +
                                std::to_string(y.size()) + " weights for " +
                                std::to_string(ens.count()) + " vectors");
    if (!y.allFinite())
        throw InvalidInput("apply_A_adjoint: weights must be finite");
    return HermitianMatrix<Scalar>(detail::apply_A_adjoint_raw(ens, y));
}

template <FieldScalar Scalar>
RealVector intensities(const SensingEnsemble<Scalar> &ens,
                       const Signal<Scalar> &x) {
    if (x.size() != ens.dimension())
        throw DimensionMismatch("intensities: signal length " +
                                std::to_string(x.size()) +
                                " != ensemble dimension " +
                                std::to_string(ens.dimension()));
    // <x, z_i> = sum_t conj(x_t) z_it
    return (ens.rows() * x.entries().conjugate()).cwiseAbs2();
}

// Noise -------------------------------------------------------------------

std::string_view to_string(NoiseModel model) {
    switch (model) {
    case NoiseModel::none: return "none";
    case NoiseModel::gaussian: return "gaussian";
    case NoiseModel::poisson: return "poisson";
    }
    return "unknown";
}

NoiseModel parse_noise_model(std::string_view name) {
    for (auto m : {NoiseModel::none, NoiseModel::gaussian, NoiseModel::poisson})
        if (to_string(m) == name)
            return m;
    throw InvalidInput("unknown noise model '" + std::string(name) + "'");
}

std::string_view to_string(SnrReference ref) {
    return ref == SnrReference::intensities ? "intensities" : "signal";
}

SnrReference parse_snr_reference(std::string_view name) {
    if (name == "intensities")
        return SnrReference::intensities;
    if (name == "signal")
        return SnrReference::signal;
    throw InvalidInput("unknown SNR reference '" + std::string(name) + "'");
}

void IntensityData::validate() const {
    if (b.size() != nu.size())
        throw DimensionMismatch("IntensityData: b and nu lengths differ");
    if (!b.allFinite() || !nu.allFinite() || !std::isfinite(eps))
        throw InvalidInput("IntensityData: entries must be finite");
    if (eps < 0.0)
        throw InvalidInput("IntensityData: eps must be nonnegative");
    if (nu.norm() > eps * (1.0 + 1e-9) + 1e-300)
        throw InvalidInput("IntensityData: ||nu|| exceeds eps");
    if (((b - nu).array() < 0.0).any())
        throw InvalidInput("IntensityData: clean intensities must be >= 0");
}

IntensityData clean_data(const RealVector &b_clean) {
    IntensityData out{b_clean, RealVector::Zero(b_clean.size()), 0.0};
    out.validate();
    return out;
}

IntensityData add_noise(const RealVector &b_clean, const NoiseSpec &spec,
                        std::uint64_t seed) {
    if (!b_clean.allFinite() || (b_clean.array() < 0.0).any())
        throw InvalidInput("add_noise: clean intensities must be finite and >= 0");
    if (std::isnan(spec.snr_db) || spec.snr_db == -std::numeric_limits<double>::infinity())
        throw InvalidInput("add_noise: SNR must be finite or +inf");
    if (!std::isfinite(spec.signal_energy) || spec.signal_energy < 0.0)
        throw InvalidInput("add_noise: signal energy must be finite and >= 0");

    const Index m = b_clean.size();
    if (spec.model == NoiseModel::none || std::isinf(spec.snr_db))
        return IntensityData{b_clean, RealVector::Zero(m), 0.0};

    const double reference_power = spec.reference == SnrReference::intensities
                                       ? b_clean.squaredNorm()
                                       : spec.signal_energy;
    if (reference_power == 0.0 && spec.snr_db < 0.0)
        throw InvalidInput("add_noise: negative SNR target with zero reference power");

    RealVector nu(m);
    for (Index i = 0; i < m; ++i) {
        RandomStream rng(seed, Stream::noise, std::uint64_t(i));
        if (spec.model == NoiseModel::gaussian)
            nu[i] = rng.normal();
        else
            nu[i] = static_cast<double>(rng.poisson(b_clean[i])) - b_clean[i];
    }

    const double drawn = nu.norm();
    const double target = std::sqrt(reference_power * std::pow(10.0, -spec.snr_db / 10.0));
    if (drawn == 0.0 || target == 0.0)
        return IntensityData{b_clean, RealVector::Zero(m), 0.0};
    nu *= target / drawn;

    IntensityData out{b_clean + nu, std::move(nu), 0.0};
    out.eps = out.nu.norm();
    return out;
}

double realized_snr_db(const IntensityData &data, double reference_power) {
    return 10.0 * std::log10(reference_power / data.nu.squaredNorm());
}

#define PHASELIFT_INSTANTIATE_MEASUREMENT(S)                                   \
    template class SensingEnsemble<S>;                                         \
    template SensingEnsemble<S> sample_ensemble<S>(Index, Index, SensingModel, \
                                                   std::uint64_t);             \
    template Vector<S> gaussian_vector<S>(Index, std::uint64_t, Stream,        \
                                          std::uint64_t);                      \
    template RealVector apply_A(const SensingEnsemble<S> &,                    \
                                const HermitianMatrix<S> &);                   \
    template HermitianMatrix<S> apply_A_adjoint(const SensingEnsemble<S> &,    \
                                                const RealVector &);           \
    template RealVector intensities(const SensingEnsemble<S> &,                \
                                    const Signal<S> &);                        \
    template RealVector detail::apply_A_raw(const SensingEnsemble<S> &,        \
                                           const Matrix<S> &);                 \
    template Matrix<S> detail::apply_A_adjoint_raw(const SensingEnsemble<S> &, \
                                                   const RealVector &);

PHASELIFT_INSTANTIATE_MEASUREMENT(double)
PHASELIFT_INSTANTIATE_MEASUREMENT(Complex)

} // namespace phaselift
