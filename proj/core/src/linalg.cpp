#include "tcur/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tcur {

namespace {

template <class Mat>
Mat pinv_impl(const Mat& m, double tol, Index* rank) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("pinv: empty matrix");
  using Real = double;
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  for (Index i = 0; i < sv.size(); ++i)
    if (!std::isfinite(sv(i))) throw std::runtime_error("pinv: SVD failed to converge");
  const Real smax = sv.size() ? sv(0) : Real(0);
  const Real cutoff = tol >= 0.0
                          ? tol * smax
                          : std::numeric_limits<Real>::epsilon() *
                                static_cast<Real>(std::max(m.rows(), m.cols())) * smax;
  Eigen::VectorXd inv_sv = Eigen::VectorXd::Zero(sv.size());
  Index r = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff && sv(i) > Real(0)) {
      inv_sv(i) = Real(1) / sv(i);
      ++r;
    }
  }
  if (rank) *rank = r;
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace

Matrix pinv(const Matrix& m, double tol, Index* rank) { return pinv_impl(m, tol, rank); }

ComplexMatrix pinv(const ComplexMatrix& m, double tol, Index* rank) {
  return pinv_impl(m, tol, rank);
}

}  // namespace tcur
