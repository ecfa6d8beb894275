#pragma once

#include <span>
#include <string>
#include <vector>

#include "tcur/tensor.hpp"

namespace tcur {

enum class SmoothMethod {
  kNone,
  kMovingAverage,
  kLoess,
  kLowess,
  kRloess,
  kRlowess,
  kSavitzkyGolay,
};

enum class MovingAverageKind { kCentered, kCumulative, kTrailing };

/// Settings for the 1-D smoothers applied to sampled fibers. span is an odd
/// window length when >= 1, or a fraction of the signal length when < 1.
/// degree -1 and robust_iterations -1 select the per-method defaults
/// (Savitzky-Golay / loess / rloess: 2, lowess / rlowess: 1; robust variants
/// run 5 reweighting passes, the others none).
struct SmootherConfig {
  SmoothMethod method = SmoothMethod::kNone;
  double span = 5.0;
  int degree = -1;
  int robust_iterations = -1;
  MovingAverageKind ma_kind = MovingAverageKind::kCentered;

  bool enabled() const { return method != SmoothMethod::kNone; }
  int resolved_degree() const;
  int resolved_robust_iterations() const;
  Index window_length(Index signal_length) const;
  void validate() const;
};

SmoothMethod smooth_method_from_name(const std::string& name);
std::string smooth_method_name(SmoothMethod method);

/// Smooth one signal. Same length out as in; method kNone is the identity.
std::vector<double> smooth(std::span<const double> signal, const SmootherConfig& cfg);

/// Smooth every column of m independently.
Matrix smooth_fibers(const Matrix& m, const SmootherConfig& cfg);

}  // namespace tcur
