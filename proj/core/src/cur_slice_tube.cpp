#include <stdexcept>

#include "tcur/cur.hpp"
#include "tcur/linalg.hpp"

namespace tcur {

Tensor SliceTubeModel::reconstruct() const {
  const Matrix ur = u * r;
  return mode_product(c, Matrix(ur.transpose()), 2);
}

SliceTubeModel slice_tube_cur(const Tensor& x, Index num_slices, Index num_tubes,
                              std::uint64_t seed, const SmootherConfig& smoother) {
  if (x.order() != 3) throw std::invalid_argument("slice_tube_cur: order-3 tensor required");
  const Index i1 = x.extent(0), i2 = x.extent(1), i3 = x.extent(2);
  if (num_slices < 1 || num_slices > i3)
    throw std::invalid_argument("slice_tube_cur: slice count out of range");
  if (num_tubes < 1 || num_tubes > i1 * i2)
    throw std::invalid_argument("slice_tube_cur: tube count out of range");

  const std::vector<double> p = slice_probs(x);
  const std::vector<double> q = tube_probs(x);

  SliceTubeModel model;
  model.slices = draw_without_replacement(
      p, {num_slices, Distribution::kLengthSquared, derive_seed(seed, 1)});
  model.tubes = draw_without_replacement(
      q, {num_tubes, Distribution::kLengthSquared, derive_seed(seed, 2)});

  model.c = subtensor(x, {{}, {}, model.slices.indices});
  if (smoother.enabled()) {
    // Smooth the mode-1 fibers of every sampled frontal slice.
    for (Index s = 0; s < num_slices; ++s) {
      Eigen::Map<Matrix> slice(model.c.data().data() + s * i1 * i2, i1, i2);
      slice = smooth_fibers(slice, smoother);
    }
  }

  model.r.resize(num_tubes, i3);
  Matrix w(num_tubes, num_slices);
  for (Index t = 0; t < num_tubes; ++t) {
    const Index pos = model.tubes.indices[static_cast<std::size_t>(t)];
    const Index i = pos % i1;
    const Index j = pos / i1;
    for (Index k = 0; k < i3; ++k) model.r(t, k) = x(i, j, k);
    for (Index s = 0; s < num_slices; ++s)
      w(t, s) = x(i, j, model.slices.indices[static_cast<std::size_t>(s)]);
  }

  model.d1.resize(num_slices);
  for (Index s = 0; s < num_slices; ++s)
    model.d1(s) = 1.0 / std::sqrt(static_cast<double>(num_slices) *
                                  model.slices.probs[static_cast<std::size_t>(s)]);
  model.d2.resize(num_tubes);
  for (Index t = 0; t < num_tubes; ++t)
    model.d2(t) = 1.0 / std::sqrt(static_cast<double>(num_tubes) *
                                  model.tubes.probs[static_cast<std::size_t>(t)]);

  const Matrix scaled = model.d2.asDiagonal() * w * model.d1.asDiagonal();
  model.u = model.d1.asDiagonal() * pinv(scaled) * model.d2.asDiagonal();
  return model;
}

}  // namespace tcur
