#pragma once

#include <Eigen/Dense>

#include "phaselift/config.hpp"

namespace phaselift {

using Index = Eigen::Index;
using RealVector = Eigen::VectorXd;

template <FieldScalar Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <FieldScalar Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// A length-n signal with finite entries.
template <FieldScalar Scalar>
class Signal {
  public:
    using scalar_type = Scalar;
    static constexpr Field field = field_of<Scalar>;

    explicit Signal(Vector<Scalar> entries);

    static Signal zeros(Index n);
    /// The k-th standard basis vector of length n.
    static Signal basis(Index n, Index k);

    Index size() const { return entries_.size(); }
    const Vector<Scalar> &entries() const { return entries_; }
    Scalar operator[](Index i) const { return entries_[i]; }

    /// Euclidean norm.
    double norm() const { return entries_.norm(); }
    double squared_norm() const { return entries_.squaredNorm(); }

    Signal scaled(Scalar factor) const { return Signal(entries_ * factor); }

  private:
    Vector<Scalar> entries_;
};

/// Dense n x n Hermitian matrix (symmetric in the real field).
///
/// Construction symmetrizes the input as (A + A*)/2, so the stored entries
/// are conjugate-symmetric to rounding.
template <FieldScalar Scalar>
class HermitianMatrix {
  public:
    using scalar_type = Scalar;
    static constexpr Field field = field_of<Scalar>;

    explicit HermitianMatrix(const Matrix<Scalar> &entries);

    static HermitianMatrix zero(Index n);
    static HermitianMatrix identity(Index n);
    /// x x*
    static HermitianMatrix outer(const Signal<Scalar> &x);
    /// x y* + y x*
    static HermitianMatrix symmetric_outer(const Signal<Scalar> &x,
                                           const Signal<Scalar> &y);

    Index size() const { return entries_.rows(); }
    const Matrix<Scalar> &matrix() const { return entries_; }
    Scalar operator()(Index i, Index j) const { return entries_(i, j); }

    double trace() const { return std::real(entries_.trace()); }
    double frobenius_norm() const { return entries_.norm(); }

    friend HermitianMatrix operator+(const HermitianMatrix &a,
                                     const HermitianMatrix &b) {
        return HermitianMatrix(a.entries_ + b.entries_, Trusted{});
    }
    friend HermitianMatrix operator-(const HermitianMatrix &a,
                                     const HermitianMatrix &b) {
        return HermitianMatrix(a.entries_ - b.entries_, Trusted{});
    }
    friend HermitianMatrix operator*(double s, const HermitianMatrix &a) {
        return HermitianMatrix(s * a.entries_, Trusted{});
    }

  private:
    struct Trusted {};
    // Sums and real multiples of Hermitian matrices stay Hermitian.
    HermitianMatrix(Matrix<Scalar> entries, Trusted)
        : entries_(std::move(entries)) {}

    Matrix<Scalar> entries_;
};

/// Trace inner product Re Tr(A* B).
template <FieldScalar Scalar>
double inner(const HermitianMatrix<Scalar> &a, const HermitianMatrix<Scalar> &b);

/// Spectral decomposition with eigenvalues sorted in descending order.
///
/// Each eigenvector is normalized so that its first component with
/// magnitude above 1e-12 is real and positive.
template <FieldScalar Scalar>
struct EigenDecomposition {
    RealVector eigenvalues;
    /// Column k pairs with eigenvalues[k].
    Matrix<Scalar> eigenvectors;

    Signal<Scalar> eigenvector(Index k) const {
        return Signal<Scalar>(eigenvectors.col(k));
    }
    /// sum_k lambda_k u_k u_k*
    HermitianMatrix<Scalar> reconstruct() const;
};

template <FieldScalar Scalar>
EigenDecomposition<Scalar> eig(const HermitianMatrix<Scalar> &a);

/// The three norms used throughout. Frobenius is written ||.||_2 in much of
/// the phase retrieval literature; here every norm carries its full name.
struct MatrixNorms {
    double nuclear = 0.0;
    double frobenius = 0.0;
    double operator_norm = 0.0;
};

template <FieldScalar Scalar>
MatrixNorms norms(const HermitianMatrix<Scalar> &a);

/// Largest eigenvalue magnitude.
template <FieldScalar Scalar>
double operator_norm(const HermitianMatrix<Scalar> &a);

/// Tangent space T_x = { x y* + y x* } of the rank-1 manifold at x x*,
/// anchored at a unit-norm x.
template <FieldScalar Scalar>
class TangentSpace {
  public:
    explicit TangentSpace(Signal<Scalar> anchor);

    const Signal<Scalar> &anchor() const { return anchor_; }
    Index size() const { return anchor_.size(); }

    /// Orthogonal projection x x* H + H x x* - x x* H x x*.
    HermitianMatrix<Scalar> project(const HermitianMatrix<Scalar> &h) const;
    /// H - project(H).
    HermitianMatrix<Scalar> project_perp(const HermitianMatrix<Scalar> &h) const;

  private:
    Signal<Scalar> anchor_;
};

template <FieldScalar Scalar>
HermitianMatrix<Scalar> project_T(const TangentSpace<Scalar> &ts,
                                  const HermitianMatrix<Scalar> &h) {
    return ts.project(h);
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> project_T_perp(const TangentSpace<Scalar> &ts,
                                       const HermitianMatrix<Scalar> &h) {
    return ts.project_perp(h);
}

#define PHASELIFT_EXTERN_HERMITIAN(S)                                          \
    extern template class Signal<S>;                                           \
    extern template class HermitianMatrix<S>;                                  \
    extern template struct EigenDecomposition<S>;                              \
    extern template class TangentSpace<S>;                                     \
    extern template double inner(const HermitianMatrix<S> &,                   \
                                 const HermitianMatrix<S> &);                  \
    extern template EigenDecomposition<S> eig(const HermitianMatrix<S> &);     \
    extern template MatrixNorms norms(const HermitianMatrix<S> &);             \
    extern template double operator_norm(const HermitianMatrix<S> &);

PHASELIFT_EXTERN_HERMITIAN(double)
PHASELIFT_EXTERN_HERMITIAN(Complex)
#undef PHASELIFT_EXTERN_HERMITIAN

} // namespace phaselift
