#pragma once

#include <complex>
#include <vector>

#include "tcur/linalg.hpp"
#include "tcur/tensor.hpp"

namespace tcur {

/// Third-order tensor in the Fourier domain along mode 3 (tube direction).
/// Same column-major layout as Tensor; frontal slices are contiguous.
struct SpectralTensor3 {
  Index rows = 0;
  Index cols = 0;
  Index tubes = 0;
  std::vector<std::complex<double>> data;

  Eigen::Map<ComplexMatrix> slice(Index k) {
    return {data.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(rows * cols),
            rows, cols};
  }
  Eigen::Map<const ComplexMatrix> slice(Index k) const {
    return {data.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(rows * cols),
            rows, cols};
  }
};

/// Unnormalized forward DFT of every tube x(i,j,:).
SpectralTensor3 fft_tubes(const Tensor& x);

/// Inverse DFT along tubes with 1/I_3 scaling. The imaginary residue is
/// checked against a scale-relative bound and then truncated; operating on a
/// spectrum that did not come from real data throws.
Tensor ifft_tubes(const SpectralTensor3& s);

/// t-product x * y: frontal-slice products in the Fourier domain. Requires
/// x: I1 x I2 x I3 and y: I2 x I4 x I3.
Tensor tprod(const Tensor& x, const Tensor& y);

/// Tensor transpose: every frontal slice transposed, slices 2..I_3 reversed.
Tensor ttranspose(const Tensor& x);

/// Tensor Moore-Penrose pseudoinverse via slice-wise pseudoinverses in the
/// Fourier domain. Satisfies the four tubal Penrose relations.
Tensor tpinv(const Tensor& x);

struct TubalQr {
  Tensor q;  // I1 x k x I3, spectral slices have orthonormal columns
  Tensor r;  // k  x I2 x I3, spectral slices upper triangular
};

/// Tubal QR: thin Householder QR of every spectral slice, k = min(I1, I2).
TubalQr tqr(const Tensor& x);

/// Identity element of the t-product: first frontal slice I_n, others zero.
Tensor tubal_identity(Index n, Index tubes);

}  // namespace tcur
