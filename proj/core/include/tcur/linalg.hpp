#pragma once

#include <Eigen/Dense>

#include "tcur/tensor.hpp"

namespace tcur {

using ComplexMatrix = Eigen::MatrixXcd;

/// SVD-based Moore-Penrose pseudoinverse. Singular values at or below the
/// cutoff are treated as zero. A negative tol selects the spectral default
/// eps * max(rows, cols) * sigma_max. If rank is non-null it receives the
/// number of retained singular values.
Matrix pinv(const Matrix& m, double tol = -1.0, Index* rank = nullptr);

ComplexMatrix pinv(const ComplexMatrix& m, double tol = -1.0, Index* rank = nullptr);

}  // namespace tcur
