#pragma once

#include <Eigen/Dense>
#include <complex>

namespace hrg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

template <typename Derived>
double frobenius(const Eigen::MatrixBase<Derived>& a) {
    return a.norm();
}

template <typename Derived>
bool approx_zero(const Eigen::MatrixBase<Derived>& a, double tol) {
    return a.cwiseAbs().maxCoeff() <= tol;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// column-major vectorization, vec(AXB) = (B^T (x) A) vec(X)
inline Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

inline Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
    return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

} // namespace hrg
