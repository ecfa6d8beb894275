#include <stdexcept>

#include "tcur/cur.hpp"
#include "tcur/tubal.hpp"

namespace tcur {

namespace {

void check_draw(const IndexDraw& draw, Index extent, const char* what) {
  if (draw.indices.empty()) throw std::invalid_argument(std::string(what) + ": empty draw");
  for (Index i : draw.indices)
    if (i < 0 || i >= extent) throw std::out_of_range(std::string(what) + ": index out of range");
}

// Smooth the mode-1 fibers (columns of every frontal slice) in place.
void smooth_slice_columns(Tensor& t, const SmootherConfig& smoother) {
  if (!smoother.enabled()) return;
  const Index rows = t.extent(0), cols = t.extent(1), tubes = t.extent(2);
  for (Index k = 0; k < tubes; ++k) {
    Eigen::Map<Matrix> slice(t.data().data() + k * rows * cols, rows, cols);
    slice = smooth_fibers(slice, smoother);
  }
}

// Smooth the mode-2 fibers (rows of every frontal slice) in place.
void smooth_slice_rows(Tensor& t, const SmootherConfig& smoother) {
  if (!smoother.enabled()) return;
  const Index rows = t.extent(0), cols = t.extent(1), tubes = t.extent(2);
  for (Index k = 0; k < tubes; ++k) {
    Eigen::Map<Matrix> slice(t.data().data() + k * rows * cols, rows, cols);
    slice = smooth_fibers(slice.transpose(), smoother).transpose();
  }
}

}  // namespace

Tensor TubalModel::reconstruct() const { return tprod(tprod(c, u), r); }

Tensor TubalCxModel::reconstruct() const { return tprod(c, y); }

TubalModel tubal_cur(const Tensor& x, const IndexDraw& lateral, const IndexDraw& horizontal,
                     MiddleMode mode, const SmootherConfig& smoother) {
  if (x.order() != 3) throw std::invalid_argument("tubal_cur: order-3 tensor required");
  check_draw(lateral, x.extent(1), "tubal_cur lateral");
  check_draw(horizontal, x.extent(0), "tubal_cur horizontal");

  TubalModel model;
  model.mode = mode;
  model.lateral = lateral;
  model.horizontal = horizontal;
  model.c = subtensor(x, {{}, lateral.indices, {}});
  model.r = subtensor(x, {horizontal.indices, {}, {}});
  smooth_slice_columns(model.c, smoother);
  smooth_slice_rows(model.r, smoother);

  if (mode == MiddleMode::kLeastSquares) {
    model.u = tprod(tprod(tpinv(model.c), x), tpinv(model.r));
  } else {
    const Tensor w = subtensor(x, {horizontal.indices, lateral.indices, {}});
    model.u = tpinv(w);
  }
  return model;
}

TubalCxModel tubal_cx(const Tensor& x, const IndexDraw& lateral, const SmootherConfig& smoother) {
  if (x.order() != 3) throw std::invalid_argument("tubal_cx: order-3 tensor required");
  check_draw(lateral, x.extent(1), "tubal_cx lateral");
  TubalCxModel model;
  model.lateral = lateral;
  model.c = subtensor(x, {{}, lateral.indices, {}});
  smooth_slice_columns(model.c, smoother);
  model.y = tprod(tpinv(model.c), x);
  return model;
}

}  // namespace tcur
