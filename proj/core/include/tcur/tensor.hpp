#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace tcur {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;

/// Dense N-way real tensor stored column-major (first index fastest).
/// Element (i_1,...,i_N) lives at linear offset i_1 + I_1*(i_2 + I_2*(i_3 + ...)).
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<Index> shape);
  static Tensor from_data(std::vector<Index> shape, std::vector<double> data);

  Index order() const { return static_cast<Index>(shape_.size()); }
  Index extent(Index mode) const { return shape_[static_cast<std::size_t>(mode)]; }
  const std::vector<Index>& shape() const { return shape_; }
  Index size() const { return static_cast<Index>(data_.size()); }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  double& operator[](Index linear) { return data_[static_cast<std::size_t>(linear)]; }
  double operator[](Index linear) const { return data_[static_cast<std::size_t>(linear)]; }

  template <class... Ix>
  double& operator()(Ix... ix) {
    const std::array<Index, sizeof...(Ix)> idx{static_cast<Index>(ix)...};
    return data_[static_cast<std::size_t>(offset(idx))];
  }
  template <class... Ix>
  double operator()(Ix... ix) const {
    const std::array<Index, sizeof...(Ix)> idx{static_cast<Index>(ix)...};
    return data_[static_cast<std::size_t>(offset(idx))];
  }

  Index offset(std::span<const Index> idx) const;

  bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

 private:
  std::vector<Index> shape_;
  std::vector<double> data_;
};

/// Mode-n unfolding: the extent(n) x (prod of the other extents) matrix whose
/// columns are the n-mode fibers. Columns are ordered by the remaining modes
/// ascending, lowest mode varying fastest. Modes are 0-based.
Matrix unfold(const Tensor& x, Index mode);

/// Inverse of unfold for the given mode and target shape.
Tensor fold(const Matrix& m, Index mode, const std::vector<Index>& shape);

/// Mode-n product x x_n b; b must have extent(n) columns. The result replaces
/// extent(n) by b.rows().
Tensor mode_product(const Tensor& x, const Matrix& b, Index mode);

double frobenius_norm(const Tensor& x);

/// Element-wise product; shapes must match.
Tensor hadamard(const Tensor& x, const Tensor& y);

/// Reinterpret the column-major buffer under a new shape of equal size.
Tensor reshape(const Tensor& x, std::vector<Index> shape);

/// Gather a subtensor. One index list per mode; an empty list keeps the whole
/// mode. Lists need not be sorted; output follows list order.
Tensor subtensor(const Tensor& x, const std::vector<std::vector<Index>>& selection);

/// Columns of unfold(x, mode) at the given positions, gathered without
/// materializing the full unfolding.
Matrix gather_mode_fibers(const Tensor& x, Index mode, std::span<const Index> fibers);

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator*(double s, const Tensor& a);

/// View a 2nd-order tensor as a matrix (copies).
Matrix as_matrix(const Tensor& x);
Tensor from_matrix(const Matrix& m);

}  // namespace tcur
