#include "tcur/tubal.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace tcur {

namespace {

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

void require_order3(const Tensor& x, const char* who) {
  if (x.order() != 3) throw std::invalid_argument(std::string(who) + ": order-3 tensor required");
}

// In-place DFT along mode 3 of a column-major (rows, cols, tubes) complex
// buffer. FFTW plan creation is not thread-safe; execution is.
void dft_mode3(std::vector<std::complex<double>>& buf, Index rows, Index cols, Index tubes,
               int sign) {
  const int n = static_cast<int>(tubes);
  const int howmany = static_cast<int>(rows * cols);
  if (n == 1 || howmany == 0) return;
  auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_many_dft(1, &n, howmany, ptr, nullptr, howmany, 1, ptr, nullptr, howmany, 1,
                              sign, FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("tubal: FFTW plan creation failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

Tensor spectral_to_real(const SpectralTensor3& s) {
  std::vector<std::complex<double>> buf = s.data;
  dft_mode3(buf, s.rows, s.cols, s.tubes, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(s.tubes);
  double max_abs = 0.0;
  double max_imag = 0.0;
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const double re = buf[i].real() * scale;
    const double im = std::abs(buf[i].imag()) * scale;
    out[i] = re;
    max_abs = std::max(max_abs, std::abs(re));
    max_imag = std::max(max_imag, im);
  }
  // Real inputs close the algebra; residue beyond this scale-relative bound
  // means the spectrum was not conjugate-symmetric.
  if (max_imag > 1e-8 * std::max(1.0, max_abs))
    throw std::runtime_error("ifft_tubes: non-negligible imaginary component");
  return Tensor::from_data({s.rows, s.cols, s.tubes}, std::move(out));
}

}  // namespace

SpectralTensor3 fft_tubes(const Tensor& x) {
  require_order3(x, "fft_tubes");
  SpectralTensor3 s;
  s.rows = x.extent(0);
  s.cols = x.extent(1);
  s.tubes = x.extent(2);
  s.data.resize(static_cast<std::size_t>(x.size()));
  auto src = x.data();
  for (std::size_t i = 0; i < s.data.size(); ++i) s.data[i] = src[i];
  dft_mode3(s.data, s.rows, s.cols, s.tubes, FFTW_FORWARD);
  return s;
}

Tensor ifft_tubes(const SpectralTensor3& s) { return spectral_to_real(s); }

Tensor tprod(const Tensor& x, const Tensor& y) {
  require_order3(x, "tprod");
  require_order3(y, "tprod");
  if (x.extent(1) != y.extent(0) || x.extent(2) != y.extent(2))
    throw std::invalid_argument("tprod: shape mismatch");
  SpectralTensor3 sx = fft_tubes(x);
  SpectralTensor3 sy = fft_tubes(y);
  SpectralTensor3 sz;
  sz.rows = x.extent(0);
  sz.cols = y.extent(1);
  sz.tubes = x.extent(2);
  sz.data.resize(static_cast<std::size_t>(sz.rows * sz.cols * sz.tubes));
  for (Index k = 0; k < sz.tubes; ++k) sz.slice(k) = sx.slice(k) * sy.slice(k);
  return spectral_to_real(sz);
}

Tensor ttranspose(const Tensor& x) {
  require_order3(x, "ttranspose");
  const Index i1 = x.extent(0), i2 = x.extent(1), i3 = x.extent(2);
  Tensor t({i2, i1, i3});
  for (Index k = 0; k < i3; ++k) {
    const Index src = k == 0 ? 0 : i3 - k;
    for (Index j = 0; j < i2; ++j)
      for (Index i = 0; i < i1; ++i) t(j, i, k) = x(i, j, src);
  }
  return t;
}

Tensor tpinv(const Tensor& x) {
  require_order3(x, "tpinv");
  SpectralTensor3 sx = fft_tubes(x);
  SpectralTensor3 sp;
  sp.rows = x.extent(1);
  sp.cols = x.extent(0);
  sp.tubes = x.extent(2);
  sp.data.resize(static_cast<std::size_t>(sp.rows * sp.cols * sp.tubes));
  for (Index k = 0; k < sp.tubes; ++k) sp.slice(k) = pinv(ComplexMatrix(sx.slice(k)));
  return spectral_to_real(sp);
}

TubalQr tqr(const Tensor& x) {
  require_order3(x, "tqr");
  const Index i1 = x.extent(0), i2 = x.extent(1), i3 = x.extent(2);
  const Index k = std::min(i1, i2);
  SpectralTensor3 sx = fft_tubes(x);
  SpectralTensor3 sq, sr;
  sq.rows = i1;
  sq.cols = k;
  sq.tubes = i3;
  sq.data.resize(static_cast<std::size_t>(i1 * k * i3));
  sr.rows = k;
  sr.cols = i2;
  sr.tubes = i3;
  sr.data.resize(static_cast<std::size_t>(k * i2 * i3));
  for (Index s = 0; s < i3; ++s) {
    Eigen::HouseholderQR<ComplexMatrix> qr(ComplexMatrix(sx.slice(s)));
    sq.slice(s) = qr.householderQ() * ComplexMatrix::Identity(i1, k);
    sr.slice(s) =
        ComplexMatrix(qr.matrixQR().topRows(k).triangularView<Eigen::Upper>());
  }
  return {spectral_to_real(sq), spectral_to_real(sr)};
}

Tensor tubal_identity(Index n, Index tubes) {
  Tensor e({n, n, tubes});
  for (Index i = 0; i < n; ++i) e(i, i, Index{0}) = 1.0;
  return e;
}

}  // namespace tcur
