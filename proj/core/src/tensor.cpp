#include "tcur/tensor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tcur {

namespace {

Index checked_size(const std::vector<Index>& shape) {
  if (shape.empty()) throw std::invalid_argument("tensor: order must be >= 1");
  Index n = 1;
  for (Index e : shape) {
    if (e < 1) throw std::invalid_argument("tensor: extents must be >= 1");
    n *= e;
  }
  return n;
}

}  // namespace

Tensor::Tensor(std::vector<Index> shape) {
  const Index n = checked_size(shape);
  shape_ = std::move(shape);
  data_.assign(static_cast<std::size_t>(n), 0.0);
}

Tensor Tensor::from_data(std::vector<Index> shape, std::vector<double> data) {
  const Index n = checked_size(shape);
  if (n != static_cast<Index>(data.size()))
    throw std::invalid_argument("tensor: data length does not match shape");
  Tensor t;
  t.shape_ = std::move(shape);
  t.data_ = std::move(data);
  return t;
}

Index Tensor::offset(std::span<const Index> idx) const {
  if (static_cast<Index>(idx.size()) != order())
    throw std::invalid_argument("tensor: index arity does not match order");
  Index off = 0;
  for (Index n = order() - 1; n >= 0; --n) {
    const Index i = idx[static_cast<std::size_t>(n)];
    if (i < 0 || i >= extent(n)) throw std::out_of_range("tensor: index out of range");
    off = off * extent(n) + i;
  }
  return off;
}

Matrix unfold(const Tensor& x, Index mode) {
  const Index n = x.order();
  if (mode < 0 || mode >= n) throw std::invalid_argument("unfold: mode out of range");
  const Index rows = x.extent(mode);
  const Index cols = x.size() / rows;
  Matrix m(rows, cols);

  // stride of the unfolded mode in the column-major buffer
  Index mode_stride = 1;
  for (Index k = 0; k < mode; ++k) mode_stride *= x.extent(k);

  const auto src = x.data();
  // Walk the remaining modes with an odometer, lowest mode fastest.
  std::vector<Index> rem_extents;
  std::vector<Index> rem_strides;
  Index stride = 1;
  for (Index k = 0; k < n; ++k) {
    if (k != mode) {
      rem_extents.push_back(x.extent(k));
      rem_strides.push_back(stride);
    }
    stride *= x.extent(k);
  }
  std::vector<Index> counter(rem_extents.size(), 0);
  Index base = 0;
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r)
      m(r, c) = src[static_cast<std::size_t>(base + r * mode_stride)];
    for (std::size_t d = 0; d < counter.size(); ++d) {
      base += rem_strides[d];
      if (++counter[d] < rem_extents[d]) break;
      base -= rem_extents[d] * rem_strides[d];
      counter[d] = 0;
    }
  }
  return m;
}

Tensor fold(const Matrix& m, Index mode, const std::vector<Index>& shape) {
  const Index n = static_cast<Index>(shape.size());
  if (mode < 0 || mode >= n) throw std::invalid_argument("fold: mode out of range");
  Tensor t(shape);
  if (m.rows() != t.extent(mode) || m.cols() != t.size() / t.extent(mode))
    throw std::invalid_argument("fold: matrix dimensions do not match shape");

  Index mode_stride = 1;
  for (Index k = 0; k < mode; ++k) mode_stride *= t.extent(k);

  auto dst = t.data();
  std::vector<Index> rem_extents;
  std::vector<Index> rem_strides;
  Index stride = 1;
  for (Index k = 0; k < n; ++k) {
    if (k != mode) {
      rem_extents.push_back(t.extent(k));
      rem_strides.push_back(stride);
    }
    stride *= t.extent(k);
  }
  std::vector<Index> counter(rem_extents.size(), 0);
  Index base = 0;
  const Index rows = m.rows();
  const Index cols = m.cols();
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r)
      dst[static_cast<std::size_t>(base + r * mode_stride)] = m(r, c);
    for (std::size_t d = 0; d < counter.size(); ++d) {
      base += rem_strides[d];
      if (++counter[d] < rem_extents[d]) break;
      base -= rem_extents[d] * rem_strides[d];
      counter[d] = 0;
    }
  }
  return t;
}

Tensor mode_product(const Tensor& x, const Matrix& b, Index mode) {
  if (mode < 0 || mode >= x.order())
    throw std::invalid_argument("mode_product: mode out of range");
  if (b.cols() != x.extent(mode))
    throw std::invalid_argument("mode_product: matrix columns must equal extent of the mode");
  std::vector<Index> shape = x.shape();
  shape[static_cast<std::size_t>(mode)] = b.rows();
  const Matrix prod = b * unfold(x, mode);
  return fold(prod, mode, shape);
}

double frobenius_norm(const Tensor& x) {
  double s = 0.0;
  for (double v : x.data()) s += v * v;
  return std::sqrt(s);
}

Tensor hadamard(const Tensor& x, const Tensor& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("hadamard: shape mismatch");
  Tensor r(x.shape());
  auto d = r.data();
  auto a = x.data();
  auto b = y.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] * b[i];
  return r;
}

Tensor reshape(const Tensor& x, std::vector<Index> shape) {
  const Index n = checked_size(shape);
  if (n != x.size()) throw std::invalid_argument("reshape: element count mismatch");
  return Tensor::from_data(std::move(shape), std::vector<double>(x.data().begin(), x.data().end()));
}

Tensor subtensor(const Tensor& x, const std::vector<std::vector<Index>>& selection) {
  const Index n = x.order();
  if (static_cast<Index>(selection.size()) != n)
    throw std::invalid_argument("subtensor: one selection per mode required");
  std::vector<std::vector<Index>> sel(selection);
  std::vector<Index> out_shape(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    auto& s = sel[static_cast<std::size_t>(k)];
    if (s.empty()) {
      s.resize(static_cast<std::size_t>(x.extent(k)));
      std::iota(s.begin(), s.end(), Index{0});
    }
    for (Index i : s)
      if (i < 0 || i >= x.extent(k))
        throw std::out_of_range("subtensor: index out of range in mode " + std::to_string(k));
    out_shape[static_cast<std::size_t>(k)] = static_cast<Index>(s.size());
  }
  Tensor t(out_shape);
  std::vector<Index> src_strides(static_cast<std::size_t>(n));
  Index stride = 1;
  for (Index k = 0; k < n; ++k) {
    src_strides[static_cast<std::size_t>(k)] = stride;
    stride *= x.extent(k);
  }
  std::vector<Index> counter(static_cast<std::size_t>(n), 0);
  auto dst = t.data();
  auto src = x.data();
  for (Index lin = 0; lin < t.size(); ++lin) {
    Index off = 0;
    for (Index k = 0; k < n; ++k)
      off += sel[static_cast<std::size_t>(k)][static_cast<std::size_t>(counter[static_cast<std::size_t>(k)])] *
             src_strides[static_cast<std::size_t>(k)];
    dst[static_cast<std::size_t>(lin)] = src[static_cast<std::size_t>(off)];
    for (Index k = 0; k < n; ++k) {
      auto& c = counter[static_cast<std::size_t>(k)];
      if (++c < t.extent(k)) break;
      c = 0;
    }
  }
  return t;
}

Matrix gather_mode_fibers(const Tensor& x, Index mode, std::span<const Index> fibers) {
  const Index n = x.order();
  if (mode < 0 || mode >= n) throw std::invalid_argument("gather_mode_fibers: mode out of range");
  const Index rows = x.extent(mode);
  const Index cols_total = x.size() / rows;

  Index mode_stride = 1;
  for (Index k = 0; k < mode; ++k) mode_stride *= x.extent(k);

  // Decompose a column position of the unfolding back into a buffer offset.
  std::vector<Index> rem_extents;
  std::vector<Index> rem_strides;
  Index stride = 1;
  for (Index k = 0; k < n; ++k) {
    if (k != mode) {
      rem_extents.push_back(x.extent(k));
      rem_strides.push_back(stride);
    }
    stride *= x.extent(k);
  }

  Matrix m(rows, static_cast<Index>(fibers.size()));
  auto src = x.data();
  for (std::size_t c = 0; c < fibers.size(); ++c) {
    Index pos = fibers[c];
    if (pos < 0 || pos >= cols_total)
      throw std::out_of_range("gather_mode_fibers: fiber index out of range");
    Index base = 0;
    for (std::size_t d = 0; d < rem_extents.size(); ++d) {
      base += (pos % rem_extents[d]) * rem_strides[d];
      pos /= rem_extents[d];
    }
    for (Index r = 0; r < rows; ++r)
      m(r, static_cast<Index>(c)) = src[static_cast<std::size_t>(base + r * mode_stride)];
  }
  return m;
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("tensor +: shape mismatch");
  Tensor r(a.shape());
  for (Index i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("tensor -: shape mismatch");
  Tensor r(a.shape());
  for (Index i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Tensor operator*(double s, const Tensor& a) {
  Tensor r(a.shape());
  for (Index i = 0; i < r.size(); ++i) r[i] = s * a[i];
  return r;
}

Matrix as_matrix(const Tensor& x) {
  if (x.order() != 2) throw std::invalid_argument("as_matrix: order-2 tensor required");
  return Eigen::Map<const Matrix>(x.data().data(), x.extent(0), x.extent(1));
}

Tensor from_matrix(const Matrix& m) {
  std::vector<double> data(m.data(), m.data() + m.size());
  return Tensor::from_data({m.rows(), m.cols()}, std::move(data));
}

}  // namespace tcur
