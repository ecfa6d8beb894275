#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tcur/cur.hpp"
#include "tcur/smoothing.hpp"
#include "tcur/tensor.hpp"

namespace tcur {

/// Binary observation pattern: 1 = observed, 0 = missing.
class Mask {
 public:
  Mask(std::vector<Index> shape, std::vector<std::uint8_t> observed);
  static Mask all_observed(const std::vector<Index>& shape);
  /// From an indicator tensor whose entries are exactly 0 or 1.
  static Mask from_indicator(const Tensor& t);

  const std::vector<Index>& shape() const { return shape_; }
  Index size() const { return static_cast<Index>(observed_.size()); }
  bool observed(Index linear) const { return observed_[static_cast<std::size_t>(linear)] != 0; }
  void set(Index linear, bool value) { observed_[static_cast<std::size_t>(linear)] = value ? 1 : 0; }
  Index count_observed() const;

  Tensor indicator() const;
  /// P_Omega: zero out the missing entries of t in place.
  void project(Tensor& t) const;

 private:
  std::vector<Index> shape_;
  std::vector<std::uint8_t> observed_;
};

enum class CompletionMethod {
  kMatrixCur,
  kTuckerCur,
  kTucker2Cur,
  kFstd,
  kSliceTubeCur,
  kTubalCur,
};

CompletionMethod completion_method_from_name(const std::string& name);
std::string completion_method_name(CompletionMethod method);

enum class InitMode { kObservedZeros, kRandomGaussian };

struct CompletionConfig {
  CompletionMethod method = CompletionMethod::kTuckerCur;
  /// Per-mode ranks for the fiber-sampling methods: tucker (one per mode,
  /// a mode with rank equal to its extent keeps an identity factor),
  /// tucker2 and matrix (columns, rows), fstd (P_1, P_2, P_3).
  std::vector<Index> ranks;
  /// Sample counts for tubal (lateral, horizontal slices) and slice-tube
  /// (frontal slices, tubes).
  Index samples_lateral = 0;
  Index samples_horizontal = 0;
  MiddleMode middle = MiddleMode::kLeastSquares;
  SmootherConfig smoother;
  int max_iterations = 100;
  double tolerance = 1e-4;
  InitMode init = InitMode::kObservedZeros;
  std::uint64_t seed = 0;
  bool resample_per_iteration = true;
  /// Record SSIM against the ground truth in the trace (costs a full SSIM
  /// pass per iteration; PSNR is always recorded when a ground truth is
  /// given).
  bool trace_ssim = false;

  void validate(const std::vector<Index>& shape) const;
};

struct IterationRecord {
  int iteration = 0;
  double rel_change = 0.0;
  std::optional<double> psnr_db;
  std::optional<double> ssim;
  double elapsed_ms = 0.0;
};

struct CompletionTrace {
  std::vector<IterationRecord> records;
};

struct CompletionResult {
  Tensor estimate;
  CompletionTrace trace;
};

using IterationObserver = std::function<void(int iteration, const Tensor& iterate)>;

/// Multistage approximate-then-mask completion: each iteration builds the
/// configured CUR model of the current iterate, reconstructs, then restores
/// the observed entries of m. Stops when the relative change drops below the
/// tolerance or at max_iterations.
CompletionResult complete(const Tensor& m, const Mask& mask, const CompletionConfig& cfg,
                          const Tensor* ground_truth = nullptr,
                          const IterationObserver& observer = {});

/// One approximate-then-mask pass. Deterministic given (c, cfg, iteration).
Tensor step(const Tensor& c, const Tensor& m, const Mask& mask, const CompletionConfig& cfg,
            int iteration);

/// ||next - prev||_F / ||prev||_F. Throws when prev has zero norm.
double relative_change(const Tensor& prev, const Tensor& next);

}  // namespace tcur
