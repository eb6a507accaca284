#pragma once

#include <cstddef>
#include <vector>

#include "qfp/matrix.hpp"

namespace qfp {

// Max l2-norm over the columns (resp. rows) of q.
double column_norm(const RealMatrix& q);
double row_norm(const RealMatrix& q);
double frobenius_norm(const RealMatrix& a);

struct JacobiOptions {
    int max_sweeps = 100;
    double tolerance = 1e-12;  // relative off-diagonal threshold
};

// Thin SVD a = u * diag(sigma) * v^T with k = min(rows, cols) singular values
// in non-increasing order. Columns of u belonging to a zero singular value are
// left zero; they never contribute to the product.
struct Svd {
    RealMatrix u;  // rows x k
    std::vector<double> sigma;
    RealMatrix v;  // cols x k
};

// One-sided (Hestenes) Jacobi. Throws ConvergenceFailure after max_sweeps.
Svd svd(const RealMatrix& a, const JacobiOptions& opts = {});

std::vector<double> singular_values(const RealMatrix& a, const JacobiOptions& opts = {});
double trace_norm(const RealMatrix& a);
double operator_norm(const RealMatrix& a);

inline constexpr double kDefaultRankTolerance = 1e-9;

// Number of singular values strictly above tol * sigma_max; 0 for the zero matrix.
std::size_t numeric_rank(const RealMatrix& a, double tol = kDefaultRankTolerance);

// Symmetric eigendecomposition g = vectors * diag(values) * vectors^T, values
// ascending. Cyclic Jacobi rotations.
struct SymmetricEigen {
    std::vector<double> values;
    RealMatrix vectors;
};

SymmetricEigen symmetric_eigen(const RealMatrix& g, const JacobiOptions& opts = {});

struct PsdOptions {
    double symmetry_tol = 1e-9;
    double eigen_tol = 1e-9;
};

// Symmetric square root V sqrt(Lambda) V^T, so that T^T T = g. Eigenvalues in
// [-eigen_tol, 0) are clamped to zero. Throws NotSquare, NotSymmetric, NotPSD.
RealMatrix psd_sqrt(const RealMatrix& g, const PsdOptions& opts = {});

}  // namespace qfp
