#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gmm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Orthonormal basis (columns) of the range of a symmetric projector P,
// i.e. of the subspace {x : Px = x}. Deterministic for a fixed P.
Mat projector_range_basis(const Mat& P, double tol = 1e-9);

// Orthonormal basis of the column span of A (rank decided at `tol` relative
// to the largest singular value). Returns an n x r matrix.
Mat column_span_basis(const Mat& A, double tol = 1e-9);

// Orthonormal basis of the kernel of A.
Mat kernel_basis(const Mat& A, double tol = 1e-9);

// Principal angles (radians, ascending) between the subspaces spanned by the
// orthonormal columns of U and V.
std::vector<double> principal_angles(const Mat& U, const Mat& V);

// Unitary polar factor of A (A = Q * sqrt(A^T A), Q returned).
Mat polar_unitary(const Mat& A);

// Least-squares solution of the linear system M x = b via SVD with a
// relative cutoff; also reports the smallest retained singular value.
Vec svd_solve(const Mat& M, const Vec& b, double rel_cutoff,
              double* sigma_min_out = nullptr);

}  // namespace gmm
