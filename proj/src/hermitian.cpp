#include "phaselift/hermitian.hpp"

#include <cmath>
#include <string>

#include "phaselift/errors.hpp"

namespace phaselift {

namespace {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived> &m) {
    return m.allFinite();
}

// Scale column so its first non-negligible entry is real positive.
template <FieldScalar Scalar>
void normalize_phase(Eigen::Ref<Vector<Scalar>> v) {
    for (Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > 1e-12) {
            if constexpr (std::same_as<Scalar, double>) {
                if (v[i] < 0)
                    v = -v;
            } else {
                v *= std::conj(v[i]) / mag;
                v[i] = Complex(mag, 0.0);
            }
            return;
        }
    }
}

} // namespace

// Signal ------------------------------------------------------------------

template <FieldScalar Scalar>
Signal<Scalar>::Signal(Vector<Scalar> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 1)
        throw InvalidInput("Signal: length must be at least 1");
    if (!all_finite(entries_))
        throw InvalidInput("Signal: entries must be finite");
}

template <FieldScalar Scalar>
Signal<Scalar> Signal<Scalar>::zeros(Index n) {
    if (n < 1)
        throw InvalidInput("Signal: length must be at least 1");
    return Signal(Vector<Scalar>::Zero(n));
}

template <FieldScalar Scalar>
Signal<Scalar> Signal<Scalar>::basis(Index n, Index k) {
    if (k < 0 || k >= n)
        throw InvalidInput("Signal::basis: index out of range");
    Vector<Scalar> e = Vector<Scalar>::Zero(n);
    e[k] = Scalar(1);
    return Signal(std::move(e));
}

// HermitianMatrix ---------------------------------------------------------

template <FieldScalar Scalar>
HermitianMatrix<Scalar>::HermitianMatrix(const Matrix<Scalar> &entries) {
    if (entries.rows() != entries.cols())
        throw DimensionMismatch("HermitianMatrix: input must be square");
    if (entries.rows() < 1)
        throw InvalidInput("HermitianMatrix: dimension must be at least 1");
    if (!all_finite(entries))
        throw InvalidInput("HermitianMatrix: entries must be finite");
    entries_ = Scalar(0.5) * (entries + entries.adjoint());
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> HermitianMatrix<Scalar>::zero(Index n) {
    return HermitianMatrix(Matrix<Scalar>::Zero(n, n));
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> HermitianMatrix<Scalar>::identity(Index n) {
    return HermitianMatrix(Matrix<Scalar>::Identity(n, n));
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar> HermitianMatrix<Scalar>::outer(const Signal<Scalar> &x) {
    return HermitianMatrix(x.entries() * x.entries().adjoint());
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar>
HermitianMatrix<Scalar>::symmetric_outer(const Signal<Scalar> &x,
                                         const Signal<Scalar> &y) {
    if (x.size() != y.size())
        throw DimensionMismatch("symmetric_outer: length mismatch");
    const Matrix<Scalar> xy = x.entries() * y.entries().adjoint();
    return HermitianMatrix(xy + xy.adjoint());
}

template <FieldScalar Scalar>
double inner(const HermitianMatrix<Scalar> &a, const HermitianMatrix<Scalar> &b) {
    if (a.size() != b.size())
        throw DimensionMismatch("inner: dimension mismatch");
    return std::real(a.matrix().cwiseProduct(b.matrix().conjugate()).sum());
}

// Spectral ----------------------------------------------------------------

template <FieldScalar Scalar>
HermitianMatrix<Scalar> EigenDecomposition<Scalar>::reconstruct() const {
    return HermitianMatrix<Scalar>(eigenvectors * eigenvalues.asDiagonal() *
                                   eigenvectors.adjoint());
}

template <FieldScalar Scalar>
EigenDecomposition<Scalar> eig(const HermitianMatrix<Scalar> &a) {
    if (!all_finite(a.matrix()))
        throw InvalidInput("eig: non-finite entries");
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(a.matrix());
    if (solver.info() != Eigen::Success)
        throw NumericalError("eig: eigensolver did not converge");

    const Index n = a.size();
    EigenDecomposition<Scalar> out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    for (Index k = 0; k < n; ++k)
        normalize_phase<Scalar>(out.eigenvectors.col(k));
    return out;
}

template <FieldScalar Scalar>
MatrixNorms norms(const HermitianMatrix<Scalar> &a) {
    if (!all_finite(a.matrix()))
        throw InvalidInput("norms: non-finite entries");
    const RealVector lambda =
        Eigen::SelfAdjointEigenSolver<Matrix<Scalar>>(a.matrix(),
                                                      Eigen::EigenvaluesOnly)
            .eigenvalues();
    MatrixNorms out;
    out.nuclear = lambda.cwiseAbs().sum();
    out.frobenius = lambda.norm();
    out.operator_norm = lambda.cwiseAbs().maxCoeff();
    return out;
}

template <FieldScalar Scalar>
double operator_norm(const HermitianMatrix<Scalar> &a) {
    return norms(a).operator_norm;
}

// Tangent space -----------------------------------------------------------

template <FieldScalar Scalar>
TangentSpace<Scalar>::TangentSpace(Signal<Scalar> anchor)
    : anchor_(std::move(anchor)) {
    if (std::abs(anchor_.norm() - 1.0) > Tolerances::unit_norm)
        throw InvalidInput("TangentSpace: anchor must have unit norm (got " +
                           std::to_string(anchor_.norm()) + ")");
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar>
TangentSpace<Scalar>::project(const HermitianMatrix<Scalar> &h) const {
    if (h.size() != size())
        throw DimensionMismatch("TangentSpace::project: dimension mismatch");
    const Vector<Scalar> &x = anchor_.entries();
    const Vector<Scalar> hx = h.matrix() * x;
    const Scalar xhx = x.dot(hx);
    // x (Hx)* + (Hx) x* - (x* H x) x x*
    const Matrix<Scalar> xhx_outer = x * hx.adjoint();
    return HermitianMatrix<Scalar>(xhx_outer + xhx_outer.adjoint() -
                                   xhx * (x * x.adjoint()));
}

template <FieldScalar Scalar>
HermitianMatrix<Scalar>
TangentSpace<Scalar>::project_perp(const HermitianMatrix<Scalar> &h) const {
    return h - project(h);
}

#define PHASELIFT_INSTANTIATE_HERMITIAN(S)                                     \
    template class Signal<S>;                                                  \
    template class HermitianMatrix<S>;                                         \
    template struct EigenDecomposition<S>;                                     \
    template class TangentSpace<S>;                                            \
    template double inner(const HermitianMatrix<S> &,                          \
                          const HermitianMatrix<S> &);                         \
    template EigenDecomposition<S> eig(const HermitianMatrix<S> &);            \
    template MatrixNorms norms(const HermitianMatrix<S> &);                    \
    template double operator_norm(const HermitianMatrix<S> &);

PHASELIFT_INSTANTIATE_HERMITIAN(double)
PHASELIFT_INSTANTIATE_HERMITIAN(Complex)

} // namespace phaselift
