#pragma once

#include <vector>

#include "tcur/tensor.hpp"

namespace tcur {

/// Peak signal-to-noise ratio in dB, 10*log10(peak^2 / MSE) over all entries.
/// Identical inputs report the 99 dB cap.
double psnr(const Tensor& ref, const Tensor& test, double peak = 255.0);

/// Mean local SSIM of two planes using an 11x11 Gaussian window, sigma 1.5,
/// K1 = 0.01, K2 = 0.03, dynamic range peak. Both extents must be >= 11.
double ssim_plane(const Matrix& ref, const Matrix& test, double peak = 255.0);

/// SSIM of tensors: order 2 is a plane; order 3 with third extent 3 averages
/// the channels; any other order 3 averages frontal-slice frames; order 4
/// (H x W x 3 x F) averages color frames.
double ssim(const Tensor& ref, const Tensor& test, double peak = 255.0);

struct MetricReport {
  double psnr_db = 0.0;
  double ssim = 0.0;
  std::vector<double> frame_psnr_db;  // filled for video inputs
  std::vector<double> frame_ssim;

  bool has_frames() const { return !frame_psnr_db.empty(); }
};

/// PSNR/SSIM with per-frame breakdown for video tensors.
MetricReport evaluate(const Tensor& ref, const Tensor& test, double peak = 255.0);

}  // namespace tcur
