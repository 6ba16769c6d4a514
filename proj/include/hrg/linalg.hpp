#pragma once

#include <vector>

#include "hrg/tolerances.hpp"
#include "hrg/types.hpp"

namespace hrg {

struct EigResult {
    RealVector values; // descending
    Matrix vectors;    // unitary, columns matching values
};

struct GramBasis {
    int rank = 0;
    Matrix coords;     // rank x n, columns c_i with c_i^* c_j = G_ij
    RealVector evals;  // kept eigenvalues, descending
};

bool is_hermitian(const Matrix& a, const Tolerances& tol = {});

// Hermitian eigendecomposition, eigenvalues descending. Throws NotHermitian /
// NoConvergence.
EigResult hermitian_eig(const Matrix& a, const Tolerances& tol = {});

// Largest singular value. Power iteration on A*A from a fixed deterministic
// start vector, relative tolerance opnorm_rel, full eigendecomposition of A*A
// as the stagnation fallback.
double operator_norm(const Matrix& a, const Tolerances& tol = {});

double psd_min_eig(const Matrix& a, const Tolerances& tol = {});
bool is_psd(const Matrix& a, const Tolerances& tol = {});

// Rank and coordinates of a PSD Gram matrix: columns reproduce every Gram
// entry, rank counts eigenvalues above rank_rel * max eigenvalue.
GramBasis gram_orthonormalize(const Matrix& g, const Tolerances& tol = {});

// Orthonormal basis of ker M (columns), via hermitian_eig of M*M.
Matrix kernel_basis(const Matrix& m, const Tolerances& tol = {});

// PSD square root; eigenvalues in [-psd_slack*scale, 0) are clipped to 0.
Matrix psd_sqrt(const Matrix& a, const Tolerances& tol = {});

// Least-squares M with M*A = B (exact when the system is consistent).
Matrix least_squares_map(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

// Matrix of X |-> sum_k A_k X B_k on column-vectorized X.
Matrix kraus_superop(const std::vector<std::pair<Matrix, Matrix>>& terms, Eigen::Index x_rows,
                     Eigen::Index x_cols);

} // namespace hrg
