#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qgraph/errors.hpp"

namespace qgraph {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Global numeric tolerance for all "= 0" axioms, as a bound on scale-normalized
// Frobenius residuals.
inline constexpr double kDefaultTolerance = 1e-9;

// Kronecker product with the left factor outermost:
// out[(i*rows(b)+k), (j*cols(b)+l)] = a(i,j) * b(k,l).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

// Column-major vectorization, vec(X)(i + rows*j) = X(i,j). Pairs with
// vec(B X C) = kron(C^T, B) vec(X).
inline Vector vec(const Matrix& x) {
    return Eigen::Map<const Vector>(x.data(), x.size());
}

inline Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw ShapeMismatch("unvec: size mismatch");
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

// Frobenius residual of `actual` against `target`, normalized by operand scale.
inline double residual(const Matrix& actual, const Matrix& target) {
    double scale = std::max(1.0, target.norm());
    return (actual - target).norm() / scale;
}

inline double residual(const Vector& actual, const Vector& target) {
    double scale = std::max(1.0, target.norm());
    return (actual - target).norm() / scale;
}

inline double hermiticity_residual(const Matrix& x) {
    return (x - x.adjoint()).norm() / std::max(1.0, x.norm());
}

inline double commutator_residual(const Matrix& x, const Matrix& y) {
    double scale = std::max({1.0, x.norm(), y.norm()});
    return (x * y - y * x).norm() / scale;
}

}  // namespace qgraph
