#include "tcur/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace tcur {

namespace {

constexpr double kPsnrCap = 99.0;
constexpr Index kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

Eigen::VectorXd gaussian_kernel() {
  Eigen::VectorXd k(kWindow);
  const Index h = kWindow / 2;
  double sum = 0.0;
  for (Index i = 0; i < kWindow; ++i) {
    const double d = static_cast<double>(i - h);
    k(i) = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += k(i);
  }
  return k / sum;
}

// Separable valid-mode Gaussian filtering: output (rows-10) x (cols-10).
Matrix gauss_valid(const Matrix& m, const Eigen::VectorXd& k) {
  const Index vr = m.rows() - kWindow + 1;
  const Index vc = m.cols() - kWindow + 1;
  Matrix horiz(m.rows(), vc);
  for (Index c = 0; c < vc; ++c) {
    horiz.col(c).setZero();
    for (Index t = 0; t < kWindow; ++t) horiz.col(c) += k(t) * m.col(c + t);
  }
  Matrix out(vr, vc);
  for (Index r = 0; r < vr; ++r) {
    out.row(r).setZero();
    for (Index t = 0; t < kWindow; ++t) out.row(r) += k(t) * horiz.row(r + t);
  }
  return out;
}

double mse(const Tensor& ref, const Tensor& test) {
  double s = 0.0;
  auto a = ref.data();
  auto b = test.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s / static_cast<double>(a.size());
}

double psnr_from_mse(double m, double peak) {
  if (m <= 0.0) return kPsnrCap;
  return std::min(kPsnrCap, 10.0 * std::log10(peak * peak / m));
}

Matrix plane_of(const Tensor& t, const std::vector<Index>& fixed_tail) {
  std::vector<std::vector<Index>> sel(static_cast<std::size_t>(t.order()));
  for (std::size_t d = 0; d < fixed_tail.size(); ++d)
    sel[2 + d] = {fixed_tail[d]};
  const Tensor sub = subtensor(t, sel);
  return Eigen::Map<const Matrix>(sub.data().data(), t.extent(0), t.extent(1));
}

}  // namespace

double psnr(const Tensor& ref, const Tensor& test, double peak) {
  if (!ref.same_shape(test)) throw std::invalid_argument("psnr: shape mismatch");
  if (peak <= 0.0) throw std::invalid_argument("psnr: peak must be positive");
  return psnr_from_mse(mse(ref, test), peak);
}

double ssim_plane(const Matrix& ref, const Matrix& test, double peak) {
  if (ref.rows() != test.rows() || ref.cols() != test.cols())
    throw std::invalid_argument("ssim: shape mismatch");
  if (ref.rows() < kWindow || ref.cols() < kWindow)
    throw std::invalid_argument("ssim: image smaller than the 11x11 window");

  const Eigen::VectorXd k = gaussian_kernel();
  const Matrix mu1 = gauss_valid(ref, k);
  const Matrix mu2 = gauss_valid(test, k);
  const Matrix s11 = gauss_valid(ref.cwiseProduct(ref), k) - mu1.cwiseProduct(mu1);
  const Matrix s22 = gauss_valid(test.cwiseProduct(test), k) - mu2.cwiseProduct(mu2);
  const Matrix s12 = gauss_valid(ref.cwiseProduct(test), k) - mu1.cwiseProduct(mu2);

  const double c1 = (kK1 * peak) * (kK1 * peak);
  const double c2 = (kK2 * peak) * (kK2 * peak);
  double acc = 0.0;
  for (Index c = 0; c < mu1.cols(); ++c)
    for (Index r = 0; r < mu1.rows(); ++r) {
      const double num = (2.0 * mu1(r, c) * mu2(r, c) + c1) * (2.0 * s12(r, c) + c2);
      const double den =
          (mu1(r, c) * mu1(r, c) + mu2(r, c) * mu2(r, c) + c1) * (s11(r, c) + s22(r, c) + c2);
      acc += num / den;
    }
  return acc / static_cast<double>(mu1.size());
}

double ssim(const Tensor& ref, const Tensor& test, double peak) {
  if (!ref.same_shape(test)) throw std::invalid_argument("ssim: shape mismatch");
  const Index n = ref.order();
  if (n == 2)
    return ssim_plane(Eigen::Map<const Matrix>(ref.data().data(), ref.extent(0), ref.extent(1)),
                      Eigen::Map<const Matrix>(test.data().data(), test.extent(0), test.extent(1)),
                      peak);
  if (n == 3) {
    double acc = 0.0;
    for (Index k = 0; k < ref.extent(2); ++k)
      acc += ssim_plane(plane_of(ref, {k}), plane_of(test, {k}), peak);
    return acc / static_cast<double>(ref.extent(2));
  }
  if (n == 4) {
    double acc = 0.0;
    for (Index f = 0; f < ref.extent(3); ++f) {
      double ch = 0.0;
      for (Index k = 0; k < ref.extent(2); ++k)
        ch += ssim_plane(plane_of(ref, {k, f}), plane_of(test, {k, f}), peak);
      acc += ch / static_cast<double>(ref.extent(2));
    }
    return acc / static_cast<double>(ref.extent(3));
  }
  throw std::invalid_argument("ssim: tensors of order 2-4 supported");
}

MetricReport evaluate(const Tensor& ref, const Tensor& test, double peak) {
  MetricReport report;
  report.psnr_db = psnr(ref, test, peak);
  report.ssim = ssim(ref, test, peak);
  const Index n = ref.order();
  const bool gray_video = n == 3 && ref.extent(2) != 3;
  const bool color_video = n == 4;
  if (gray_video || color_video) {
    const Index frames = gray_video ? ref.extent(2) : ref.extent(3);
    for (Index f = 0; f < frames; ++f) {
      std::vector<std::vector<Index>> sel(static_cast<std::size_t>(n));
      sel[static_cast<std::size_t>(n - 1)] = {f};
      const Tensor rf = subtensor(ref, sel);
      const Tensor tf = subtensor(test, sel);
      report.frame_psnr_db.push_back(psnr(rf, tf, peak));
      const Tensor rq = reshape(rf, std::vector<Index>(rf.shape().begin(), rf.shape().end() - 1));
      const Tensor tq = reshape(tf, std::vector<Index>(tf.shape().begin(), tf.shape().end() - 1));
      report.frame_ssim.push_back(ssim(rq, tq, peak));
    }
  }
  return report;
}

}  // namespace tcur
