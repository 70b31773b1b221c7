#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

#include "phaselift/hermitian.hpp"
#include "phaselift/random.hpp"

namespace phaselift {

/// Distribution the sensing vectors are drawn from. `custom` marks
/// ensembles assembled from caller-supplied vectors.
enum class SensingModel {
    real_gaussian,
    complex_gaussian,
    real_unit_sphere,
    complex_unit_sphere,
    sphere_radius_sqrt_n,
    custom,
};

std::string_view to_string(SensingModel model);
SensingModel parse_sensing_model(std::string_view name);

/// True when vectors drawn from `model` live in `field`.
bool model_matches_field(SensingModel model, Field field);

bool is_gaussian(SensingModel model);

/// m sensing vectors z_1..z_m of common length n.
///
/// Stored as an m x n matrix whose i-th row is z_i^T, alongside its
/// entrywise conjugate, so the measurement operator and its adjoint are
/// single matrix products.
template <FieldScalar Scalar>
class SensingEnsemble {
  public:
    static constexpr Field field = field_of<Scalar>;

    SensingEnsemble(Matrix<Scalar> rows, SensingModel model, std::uint64_t seed);

    /// n
    Index dimension() const { return rows_.cols(); }
    /// m
    Index count() const { return rows_.rows(); }
    SensingModel model() const { return model_; }
    std::uint64_t seed() const { return seed_; }

    const Matrix<Scalar> &rows() const { return rows_; }
    const Matrix<Scalar> &conjugate_rows() const { return conj_rows_; }
    Signal<Scalar> vector(Index i) const { return Signal<Scalar>(rows_.row(i).transpose()); }

  private:
    Matrix<Scalar> rows_;
    Matrix<Scalar> conj_rows_;
    SensingModel model_;
    std::uint64_t seed_;
};

/// Draws m vectors of length n. Vector i comes from its own substream, so
/// the first k vectors of an (n, m) ensemble equal those of any (n, m')
/// ensemble with the same seed.
template <FieldScalar Scalar>
SensingEnsemble<Scalar> sample_ensemble(Index n, Index m, SensingModel model,
                                        std::uint64_t seed);

/// Length-n Gaussian vector from a given substream: N(0, 1) entries in the
/// real field, a + ib with a, b ~ N(0, 1/2) in the complex field.
template <FieldScalar Scalar>
Vector<Scalar> gaussian_vector(Index n, std::uint64_t seed, Stream purpose,
                               std::uint64_t index);

/// A(X)_i = z_i* X z_i.
template <FieldScalar Scalar>
RealVector apply_A(const SensingEnsemble<Scalar> &ens,
                   const HermitianMatrix<Scalar> &x);

/// A*(y) = sum_i y_i z_i z_i*.
template <FieldScalar Scalar>
HermitianMatrix<Scalar> apply_A_adjoint(const SensingEnsemble<Scalar> &ens,
                                        const RealVector &y);

/// b_i = |<x, z_i>|^2.
template <FieldScalar Scalar>
RealVector intensities(const SensingEnsemble<Scalar> &ens,
                       const Signal<Scalar> &x);

namespace detail {
// Unchecked kernels used inside solver loops.
template <FieldScalar Scalar>
RealVector apply_A_raw(const SensingEnsemble<Scalar> &ens,
                       const Matrix<Scalar> &x);
template <FieldScalar Scalar>
Matrix<Scalar> apply_A_adjoint_raw(const SensingEnsemble<Scalar> &ens,
                                   const RealVector &y);
} // namespace detail

// Noise -------------------------------------------------------------------

enum class NoiseModel { none, gaussian, poisson };

std::string_view to_string(NoiseModel model);
NoiseModel parse_noise_model(std::string_view name);

/// What the SNR in decibels is measured against.
///
/// `intensities`: 10 log10(||b_clean||^2 / ||nu||^2).
/// `signal`: 10 log10(||x||^2 / ||nu||^2), with ||x||^2 supplied by the
/// caller. The noise power then does not scale with m.
enum class SnrReference { intensities, signal };

std::string_view to_string(SnrReference ref);
SnrReference parse_snr_reference(std::string_view name);

struct NoiseSpec {
    NoiseModel model = NoiseModel::none;
    double snr_db = std::numeric_limits<double>::infinity();
    SnrReference reference = SnrReference::intensities;
    /// ||x||^2, required when reference == signal.
    double signal_energy = 0.0;
};

/// Observed intensities b = b_clean + nu with ||nu||_2 <= eps.
struct IntensityData {
    RealVector b;
    RealVector nu;
    double eps = 0.0;

    Index size() const { return b.size(); }
    RealVector clean() const { return b - nu; }
    /// Validates the invariants; throws InvalidInput.
    void validate() const;
};

/// Noise-free data: nu = 0, eps = 0.
IntensityData clean_data(const RealVector &b_clean);

/// Draws noise and rescales it so the realized SNR equals the target
/// exactly. Poisson noise samples b_i ~ Poi(mu_i) with mu = b_clean and
/// rescales b - mu.
IntensityData add_noise(const RealVector &b_clean, const NoiseSpec &spec,
                        std::uint64_t seed);

inline IntensityData add_noise(const RealVector &b_clean, NoiseModel model,
                               double snr_db, std::uint64_t seed) {
    return add_noise(b_clean, NoiseSpec{model, snr_db}, seed);
}

/// Realized SNR in dB of `data` against the given reference power.
double realized_snr_db(const IntensityData &data, double reference_power);

#define PHASELIFT_EXTERN_MEASUREMENT(S)                                        \
    extern template class SensingEnsemble<S>;                                  \
    extern template SensingEnsemble<S> sample_ensemble<S>(                     \
        Index, Index, SensingModel, std::uint64_t);                            \
    extern template Vector<S> gaussian_vector<S>(Index, std::uint64_t,         \
                                                 Stream, std::uint64_t);       \
    extern template RealVector apply_A(const SensingEnsemble<S> &,             \
                                       const HermitianMatrix<S> &);            \
    extern template HermitianMatrix<S> apply_A_adjoint(                        \
        const SensingEnsemble<S> &, const RealVector &);                       \
    extern template RealVector intensities(const SensingEnsemble<S> &,         \
                                           const Signal<S> &);                 \
    extern template RealVector detail::apply_A_raw(const SensingEnsemble<S> &, \
                                                   const Matrix<S> &);         \
    extern template Matrix<S> detail::apply_A_adjoint_raw(                     \
        const SensingEnsemble<S> &, const RealVector &);

PHASELIFT_EXTERN_MEASUREMENT(double)
PHASELIFT_EXTERN_MEASUREMENT(Complex)
#undef PHASELIFT_EXTERN_MEASUREMENT

} // namespace phaselift
