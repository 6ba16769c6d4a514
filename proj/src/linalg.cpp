#include "hrg/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "hrg/rng.hpp"

namespace hrg {

bool is_hermitian(const Matrix& a, const Tolerances& tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).norm() <= tol.hermitian_rel * std::max(1e-300, a.norm());
}

EigResult hermitian_eig(const Matrix& a, const Tolerances& tol) {
    if (!is_hermitian(a, tol)) throw CheckError("NotHermitian", "matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es((a + a.adjoint()) / 2.0);
    if (es.info() != Eigen::Success) throw CheckError("NoConvergence", "eigensolver failed");
    const Eigen::Index n = a.rows();
    EigResult out;
    out.values = es.eigenvalues().reverse();
    out.vectors = Matrix(n, n);
    for (Eigen::Index j = 0; j < n; ++j) out.vectors.col(j) = es.eigenvectors().col(n - 1 - j);
    return out;
}

double operator_norm(const Matrix& a, const Tolerances& tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const Matrix b = a.adjoint() * a;
    const Eigen::Index n = b.rows();
    const double scale = b.norm();
    if (scale == 0.0) return 0.0;

    SplitMix64 rng(0x6b6772616d6f7021ULL); // fixed seed: the start vector is part of the contract
    Vector v = random_matrix(rng, n, 1);
    v.normalize();
    double theta = 0.0;
    for (int it = 0; it < 500; ++it) {
        Vector w = b * v;
        const double nw = w.norm();
        if (nw <= 1e-300) break; // iterate collapsed, decide by eigendecomposition
        w /= nw;
        const Vector bw = b * w;
        const double next = std::real(Complex(w.dot(bw)));
        const double residual = (bw - next * w).norm();
        if (it > 0 && std::abs(next - theta) <= tol.opnorm_rel * std::max(1.0, next) &&
            residual <= tol.opnorm_rel * std::max(1.0, next)) {
            return std::sqrt(std::max(0.0, next));
        }
        theta = next;
        v = w;
    }
    // stagnated: fall back to the full decomposition of A*A
    EigResult eig = hermitian_eig(b, tol);
    return std::sqrt(std::max(0.0, eig.values(0)));
}

double psd_min_eig(const Matrix& a, const Tolerances& tol) {
    EigResult eig = hermitian_eig(a, tol);
    return eig.values.size() ? eig.values(eig.values.size() - 1) : 0.0;
}

bool is_psd(const Matrix& a, const Tolerances& tol) {
    if (a.rows() == 0) return true;
    EigResult eig = hermitian_eig(a, tol);
    const double hi = std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
    return eig.values(eig.values.size() - 1) >= -tol.psd_slack * std::max(1.0, hi);
}

GramBasis gram_orthonormalize(const Matrix& g, const Tolerances& tol) {
    const Eigen::Index n = g.rows();
    if (n == 0) return {0, Matrix(0, 0), RealVector(0)};
    EigResult eig = hermitian_eig(g, tol);
    const double top = eig.values(0);
    const double hi = std::max(std::abs(top), std::abs(eig.values(n - 1)));
    if (eig.values(n - 1) < -tol.psd_slack * std::max(1.0, hi))
        throw CheckError("NotPSD", "Gram matrix has eigenvalue " + std::to_string(eig.values(n - 1)));
    int rank = 0;
    while (rank < n && eig.values(rank) > tol.rank_rel * std::max(top, 0.0)) ++rank;
    GramBasis out;
    out.rank = rank;
    out.evals = eig.values.head(rank);
    out.coords = Matrix(rank, n);
    for (int k = 0; k < rank; ++k)
        out.coords.row(k) = std::sqrt(eig.values(k)) * eig.vectors.col(k).adjoint();
    return out;
}

Matrix kernel_basis(const Matrix& m, const Tolerances& tol) {
    const Eigen::Index n = m.cols();
    if (n == 0) return Matrix(0, 0);
    const Matrix b = m.adjoint() * m;
    EigResult eig = hermitian_eig(b, tol);
    const double cutoff = tol.rank_rel * std::max(1.0, b.norm());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < n; ++k)
        if (eig.values(k) <= cutoff) keep.push_back(k);
    Matrix out(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) out.col(j) = eig.vectors.col(keep[j]);
    return out;
}

Matrix psd_sqrt(const Matrix& a, const Tolerances& tol) {
    EigResult eig = hermitian_eig(a, tol);
    const Eigen::Index n = a.rows();
    const double hi = n ? std::max(std::abs(eig.values(0)), std::abs(eig.values(n - 1))) : 0.0;
    Matrix out = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        double lam = eig.values(k);
        if (lam < -tol.psd_slack * std::max(1.0, hi))
            throw CheckError("NotPSD", "square root of a non-PSD matrix");
        lam = std::max(lam, 0.0);
        out += std::sqrt(lam) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    }
    return out;
}

Matrix least_squares_map(const Matrix& a, const Matrix& b, const Tolerances& tol) {
    // minimize ||M A - B||_F: M = B A^* (A A^*)^+
    const Matrix gram = a * a.adjoint();
    EigResult eig = hermitian_eig(gram, tol);
    const Eigen::Index n = gram.rows();
    const double top = n ? std::max(eig.values(0), 0.0) : 0.0;
    Matrix pinv = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
        if (eig.values(k) > tol.rank_rel * std::max(top, 1e-300))
            pinv += (1.0 / eig.values(k)) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    return b * a.adjoint() * pinv;
}

Matrix kraus_superop(const std::vector<std::pair<Matrix, Matrix>>& terms, Eigen::Index x_rows,
                     Eigen::Index x_cols) {
    Matrix out = Matrix::Zero(x_rows * x_cols, x_rows * x_cols);
    for (const auto& [a, b] : terms) out += kron(b.transpose(), a);
    return out;
}

} // namespace hrg
