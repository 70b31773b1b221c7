#pragma once

#include <complex>
#include <concepts>
#include <string_view>

namespace phaselift {

using Complex = std::complex<double>;

/// Scalars a signal or matrix may carry. Real data is kept real so the
/// real model never pays for complex arithmetic.
template <typename T>
concept FieldScalar = std::same_as<T, double> || std::same_as<T, Complex>;

enum class Field { real, complex };

template <FieldScalar Scalar>
inline constexpr Field field_of =
    std::same_as<Scalar, double> ? Field::real : Field::complex;

constexpr std::string_view to_string(Field f) {
    return f == Field::real ? "real" : "complex";
}

/// Numerical tolerances shared across modules.
struct Tolerances {
    /// Conjugate symmetry of stored Hermitian matrices.
    static constexpr double hermitian_symmetry = 1e-12;
    /// Unit norm of a tangent-space anchor or certificate signal.
    static constexpr double unit_norm = 1e-12;
    /// Relative imaginary residue tolerated in z* X z before discarding.
    static constexpr double quadratic_form_imag = 1e-10;
    /// Largest admissible negative eigenvalue (relative to the Frobenius
    /// norm) for rank-1 extraction.
    static constexpr double psd_extraction = 1e-6;
    /// Relative gap under which the top eigenvalue counts as repeated.
    static constexpr double eigenvalue_multiplicity = 1e-9;
    /// Noiseless solves use eps = factor * ||b||.
    static constexpr double noiseless_eps_factor = 1e-6;
    /// Lower end of the bisection bracket relative to the upper end.
    static constexpr double lambda_bracket_ratio = 1e-8;
    /// Relative lambda resolution of the bisection.
    static constexpr double lambda_rel_tol = 1e-3;
    static constexpr int max_bisection_probes = 50;
    /// Slack on the residual constraint ||A(X) - b|| <= eps (1 + slack).
    static constexpr double residual_slack = 1e-6;
    /// Power iteration settings for the Lipschitz bound.
    static constexpr double power_iteration_rel_tol = 1e-4;
    static constexpr int power_iteration_max_iters = 500;
    static constexpr double lipschitz_inflation = 1.05;
};

} // namespace phaselift
