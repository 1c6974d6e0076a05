#include "gmmtk/linalg.hpp"

#include <Eigen/SVD>
#include <algorithm>

namespace gmm {

Mat projector_range_basis(const Mat& P, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(P);
  const Vec& ev = es.eigenvalues();
  int r = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > 1.0 - tol * 10 || ev[i] > 0.5) ++r;
  Mat B(P.rows(), r);
  int c = 0;
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > 1.0 - tol * 10 || ev[i] > 0.5) B.col(c++) = es.eigenvectors().col(i);
  return B;
}

Mat column_span_basis(const Mat& A, double tol) {
  if (A.cols() == 0) return Mat(A.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol * std::max(smax, 1.0)) ++r;
  return svd.matrixU().leftCols(r);
}

Mat kernel_basis(const Mat& A, double tol) {
  if (A.rows() == 0) return Mat::Identity(A.cols(), A.cols());
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > tol * std::max(smax, 1.0)) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

std::vector<double> principal_angles(const Mat& U, const Mat& V) {
  std::vector<double> out;
  if (U.cols() == 0 || V.cols() == 0) return out;
  Eigen::JacobiSVD<Mat> svd(U.transpose() * V);
  const Vec& s = svd.singularValues();
  for (int i = 0; i < s.size(); ++i) {
    double c = std::clamp(s[i], -1.0, 1.0);
    out.push_back(std::acos(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Mat polar_unitary(const Mat& A) {
  Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Vec svd_solve(const Mat& M, const Vec& b, double rel_cutoff,
              double* sigma_min_out) {
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  Vec c = svd.matrixU().transpose() * b;
  int kept = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > rel_cutoff * std::max(smax, 1.0)) {
      c[i] /= s[i];
      ++kept;
    } else {
      c[i] = 0.0;
    }
  }
  if (sigma_min_out)
    *sigma_min_out = kept > 0 ? s[kept - 1] : 0.0;
  return svd.matrixV() * c;
}

}  // namespace gmm
