#include <array>
#include <stdexcept>

#include "tcur/cur.hpp"
#include "tcur/linalg.hpp"

namespace tcur {

Tensor TuckerModel::reconstruct() const {
  Tensor x = core;
  for (Index n = 0; n < static_cast<Index>(factors.size()); ++n)
    x = mode_product(x, factors[static_cast<std::size_t>(n)], n);
  return x;
}

TuckerModel make_tucker(const Tensor& x, std::vector<Matrix> factors,
                        std::vector<IndexDraw> draws) {
  if (static_cast<Index>(factors.size()) != x.order())
    throw std::invalid_argument("make_tucker: one factor per mode required");
  TuckerModel model;
  Tensor core = x;
  for (Index n = 0; n < x.order(); ++n) {
    const Matrix& a = factors[static_cast<std::size_t>(n)];
    if (a.rows() != x.extent(n))
      throw std::invalid_argument("make_tucker: factor rows must match the mode extent");
    Index rank = 0;
    const Matrix ap = pinv(a, -1.0, &rank);
    if (rank < a.cols()) model.deficient_modes.push_back(n);
    core = mode_product(core, ap, n);
  }
  model.core = std::move(core);
  model.factors = std::move(factors);
  model.draws = std::move(draws);
  return model;
}

TuckerModel tucker_cur(const Tensor& x, const std::vector<IndexDraw>& fiber_draws,
                       const SmootherConfig& smoother) {
  if (static_cast<Index>(fiber_draws.size()) != x.order())
    throw std::invalid_argument("tucker_cur: one fiber draw per mode required");
  std::vector<Matrix> factors;
  factors.reserve(fiber_draws.size());
  for (Index n = 0; n < x.order(); ++n) {
    const IndexDraw& d = fiber_draws[static_cast<std::size_t>(n)];
    if (d.indices.empty()) throw std::invalid_argument("tucker_cur: empty draw");
    factors.push_back(smooth_fibers(gather_mode_fibers(x, n, d.indices), smoother));
  }
  return make_tucker(x, std::move(factors), fiber_draws);
}

TuckerModel tucker2_cur(const Tensor& x, const IndexDraw& col_draw, const IndexDraw& row_draw,
                        const SmootherConfig& smoother) {
  if (x.order() != 3) throw std::invalid_argument("tucker2_cur: order-3 tensor required");
  if (col_draw.indices.empty() || row_draw.indices.empty())
    throw std::invalid_argument("tucker2_cur: empty draw");
  std::vector<Matrix> factors;
  factors.push_back(smooth_fibers(gather_mode_fibers(x, 0, col_draw.indices), smoother));
  factors.push_back(smooth_fibers(gather_mode_fibers(x, 1, row_draw.indices), smoother));
  factors.push_back(Matrix::Identity(x.extent(2), x.extent(2)));
  return make_tucker(x, std::move(factors), {col_draw, row_draw, IndexDraw{}});
}

TuckerModel fstd(const Tensor& x, const std::vector<IndexDraw>& mode_indices,
                 const SmootherConfig& smoother) {
  if (x.order() != 3) throw std::invalid_argument("fstd: order-3 tensor required");
  if (mode_indices.size() != 3) throw std::invalid_argument("fstd: three index sets required");
  for (Index n = 0; n < 3; ++n) {
    const IndexDraw& d = mode_indices[static_cast<std::size_t>(n)];
    if (d.indices.empty()) throw std::invalid_argument("fstd: empty index set");
    for (Index i : d.indices)
      if (i < 0 || i >= x.extent(n)) throw std::out_of_range("fstd: index out of range");
  }
  const auto& s1 = mode_indices[0].indices;
  const auto& s2 = mode_indices[1].indices;
  const auto& s3 = mode_indices[2].indices;

  const Tensor w = subtensor(x, {s1, s2, s3});

  // Fibers crossing the other two index sets, one unfolding per mode.
  std::array<Matrix, 3> a = {
      unfold(subtensor(x, {{}, s2, s3}), 0),
      unfold(subtensor(x, {s1, {}, s3}), 1),
      unfold(subtensor(x, {s1, s2, {}}), 2),
  };

  TuckerModel model;
  model.core = w;
  model.draws = mode_indices;
  for (Index n = 0; n < 3; ++n) {
    const Matrix wn = unfold(w, n);
    Index rank = 0;
    const Matrix wp = pinv(wn, -1.0, &rank);
    if (rank < w.extent(n)) model.deficient_modes.push_back(n);
    model.factors.push_back(smooth_fibers(a[static_cast<std::size_t>(n)], smoother) * wp);
  }
  return model;
}

}  // namespace tcur
