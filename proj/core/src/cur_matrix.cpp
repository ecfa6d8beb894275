#include <stdexcept>

#include "tcur/cur.hpp"
#include "tcur/linalg.hpp"

namespace tcur {

namespace {

Matrix select_columns(const Matrix& x, const IndexDraw& draw) {
  Matrix c(x.rows(), draw.count());
  for (Index k = 0; k < draw.count(); ++k) {
    const Index j = draw.indices[static_cast<std::size_t>(k)];
    if (j < 0 || j >= x.cols()) throw std::out_of_range("matrix_cur: column index out of range");
    c.col(k) = x.col(j);
  }
  return c;
}

Matrix select_rows(const Matrix& x, const IndexDraw& draw) {
  Matrix r(draw.count(), x.cols());
  for (Index k = 0; k < draw.count(); ++k) {
    const Index i = draw.indices[static_cast<std::size_t>(k)];
    if (i < 0 || i >= x.rows()) throw std::out_of_range("matrix_cur: row index out of range");
    r.row(k) = x.row(i);
  }
  return r;
}

}  // namespace

MatrixCurModel matrix_cur(const Matrix& x, const IndexDraw& cols, const IndexDraw& rows,
                          MiddleMode mode, const SmootherConfig& smoother) {
  if (cols.indices.empty() || rows.indices.empty())
    throw std::invalid_argument("matrix_cur: empty index set");
  MatrixCurModel model;
  model.mode = mode;
  model.cols = cols;
  model.rows = rows;
  model.c = smooth_fibers(select_columns(x, cols), smoother);
  model.r = smooth_fibers(select_rows(x, rows).transpose(), smoother).transpose();
  if (mode == MiddleMode::kLeastSquares) {
    model.u = pinv(model.c) * x * pinv(model.r);
  } else {
    Matrix w(rows.count(), cols.count());
    for (Index i = 0; i < rows.count(); ++i)
      for (Index j = 0; j < cols.count(); ++j)
        w(i, j) = x(rows.indices[static_cast<std::size_t>(i)],
                    cols.indices[static_cast<std::size_t>(j)]);
    model.u = pinv(w);
  }
  return model;
}

MatrixCyModel matrix_cy(const Matrix& x, const IndexDraw& cols, const SmootherConfig& smoother) {
  if (cols.indices.empty()) throw std::invalid_argument("matrix_cy: empty index set");
  MatrixCyModel model;
  model.cols = cols;
  model.c = smooth_fibers(select_columns(x, cols), smoother);
  model.y = pinv(model.c) * x;
  return model;
}

}  // namespace tcur
