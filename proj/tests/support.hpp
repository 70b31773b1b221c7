#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "phaselift/hermitian.hpp"

// Test inputs come from the standard library engine so that oracles never
// share randomness with the code under test.
namespace testing_support {

using phaselift::Complex;
using phaselift::HermitianMatrix;
using phaselift::Index;
using phaselift::Matrix;
using phaselift::Signal;
using phaselift::Vector;

class Gen {
  public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    template <typename S>
    S scalar() {
        if constexpr (std::is_same_v<S, double>)
            return normal();
        else
            return Complex(normal(), normal()) / std::sqrt(2.0);
    }

    template <typename S>
    Vector<S> vector(Index n) {
        Vector<S> v(n);
        for (Index i = 0; i < n; ++i)
            v[i] = scalar<S>();
        return v;
    }

    template <typename S>
    Signal<S> signal(Index n) { return Signal<S>(vector<S>(n)); }

    template <typename S>
    Signal<S> unit(Index n) {
        Vector<S> v = vector<S>(n);
        return Signal<S>(v / v.norm());
    }

    template <typename S>
    Matrix<S> matrix(Index rows, Index cols) {
        Matrix<S> a(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j)
                a(i, j) = scalar<S>();
        return a;
    }

    template <typename S>
    HermitianMatrix<S> hermitian(Index n) {
        const Matrix<S> a = matrix<S>(n, n);
        return HermitianMatrix<S>(Matrix<S>((a + a.adjoint()) / 2.0));
    }

    template <typename S>
    HermitianMatrix<S> psd(Index n, Index rank) {
        const Matrix<S> a = matrix<S>(n, rank);
        return HermitianMatrix<S>(Matrix<S>(a * a.adjoint()));
    }

    /// Haar-ish unitary from the QR factorization of a Gaussian matrix.
    template <typename S>
    Matrix<S> unitary(Index n) {
        Eigen::HouseholderQR<Matrix<S>> qr(matrix<S>(n, n));
        return qr.householderQ() * Matrix<S>::Identity(n, n);
    }

    std::mt19937_64 &engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

template <typename S>
Matrix<S> diag(std::initializer_list<double> values) {
    Vector<S> v(static_cast<Index>(values.size()));
    Index i = 0;
    for (double x : values)
        v[i++] = S(x);
    return v.asDiagonal();
}

/// Median of a copy.
inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t k = v.size() / 2;
    return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

} // namespace testing_support
