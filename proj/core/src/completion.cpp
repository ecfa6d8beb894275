#include "tcur/completion.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tcur/metrics.hpp"

namespace tcur {

Mask::Mask(std::vector<Index> shape, std::vector<std::uint8_t> observed)
    : shape_(std::move(shape)), observed_(std::move(observed)) {
  Index n = 1;
  for (Index e : shape_) n *= e;
  if (n != static_cast<Index>(observed_.size()))
    throw std::invalid_argument("mask: indicator length does not match shape");
  for (std::uint8_t v : observed_)
    if (v > 1) throw std::invalid_argument("mask: entries must be 0 or 1");
}

Mask Mask::all_observed(const std::vector<Index>& shape) {
  Index n = 1;
  for (Index e : shape) n *= e;
  return Mask(shape, std::vector<std::uint8_t>(static_cast<std::size_t>(n), 1));
}

Mask Mask::from_indicator(const Tensor& t) {
  std::vector<std::uint8_t> obs(static_cast<std::size_t>(t.size()));
  for (Index i = 0; i < t.size(); ++i) {
    const double v = t[i];
    if (v != 0.0 && v != 1.0)
      throw std::invalid_argument("mask: indicator entries must be exactly 0 or 1");
    obs[static_cast<std::size_t>(i)] = v == 1.0 ? 1 : 0;
  }
  return Mask(t.shape(), std::move(obs));
}

Index Mask::count_observed() const {
  Index n = 0;
  for (std::uint8_t v : observed_) n += v;
  return n;
}

Tensor Mask::indicator() const {
  Tensor t(shape_);
  for (Index i = 0; i < size(); ++i) t[i] = observed(i) ? 1.0 : 0.0;
  return t;
}

void Mask::project(Tensor& t) const {
  if (t.shape() != shape_) throw std::invalid_argument("mask: shape mismatch");
  for (Index i = 0; i < size(); ++i)
    if (!observed(i)) t[i] = 0.0;
}

CompletionMethod completion_method_from_name(const std::string& name) {
  if (name == "matrix-cur") return CompletionMethod::kMatrixCur;
  if (name == "tucker-cur") return CompletionMethod::kTuckerCur;
  if (name == "tucker2-cur") return CompletionMethod::kTucker2Cur;
  if (name == "fstd") return CompletionMethod::kFstd;
  if (name == "slice-tube-cur") return CompletionMethod::kSliceTubeCur;
  if (name == "tubal-cur") return CompletionMethod::kTubalCur;
  throw std::invalid_argument("unknown completion method: " + name);
}

std::string completion_method_name(CompletionMethod method) {
  switch (method) {
    case CompletionMethod::kMatrixCur: return "matrix-cur";
    case CompletionMethod::kTuckerCur: return "tucker-cur";
    case CompletionMethod::kTucker2Cur: return "tucker2-cur";
    case CompletionMethod::kFstd: return "fstd";
    case CompletionMethod::kSliceTubeCur: return "slice-tube-cur";
    case CompletionMethod::kTubalCur: return "tubal-cur";
  }
  return "tucker-cur";
}

void CompletionConfig::validate(const std::vector<Index>& shape) const {
  const Index n = static_cast<Index>(shape.size());
  Index total = 1;
  for (Index e : shape) total *= e;
  if (max_iterations < 1) throw std::invalid_argument("completion: max_iterations must be >= 1");
  if (!(tolerance >= 0.0)) throw std::invalid_argument("completion: tolerance must be >= 0");
  smoother.validate();

  auto need_ranks = [&](std::size_t count) {
    if (ranks.size() != count)
      throw std::invalid_argument("completion: method needs " + std::to_string(count) + " ranks");
    for (std::size_t i = 0; i < count; ++i)
      if (ranks[i] < 1) throw std::invalid_argument("completion: ranks must be positive");
  };

  switch (method) {
    case CompletionMethod::kMatrixCur:
      if (n != 2) throw std::invalid_argument("matrix-cur runs on order-2 tensors");
      need_ranks(2);
      if (ranks[0] > shape[1] || ranks[1] > shape[0])
        throw std::invalid_argument("matrix-cur: ranks exceed matrix dimensions");
      break;
    case CompletionMethod::kTuckerCur: {
      if (n < 2) throw std::invalid_argument("tucker-cur needs order >= 2");
      need_ranks(static_cast<std::size_t>(n));
      for (Index k = 0; k < n; ++k) {
        const Index pop = total / shape[static_cast<std::size_t>(k)];
        if (ranks[static_cast<std::size_t>(k)] > shape[static_cast<std::size_t>(k)] ||
            ranks[static_cast<std::size_t>(k)] > pop)
          throw std::invalid_argument("tucker-cur: rank exceeds mode dimension");
      }
      break;
    }
    case CompletionMethod::kTucker2Cur:
      if (n != 3) throw std::invalid_argument("tucker2-cur runs on order-3 tensors");
      need_ranks(2);
      if (ranks[0] > shape[0] || ranks[1] > shape[1])
        throw std::invalid_argument("tucker2-cur: ranks exceed tensor dimensions");
      break;
    case CompletionMethod::kFstd:
      if (n != 3) throw std::invalid_argument("fstd runs on order-3 tensors");
      need_ranks(3);
      for (Index k = 0; k < 3; ++k)
        if (ranks[static_cast<std::size_t>(k)] > shape[static_cast<std::size_t>(k)])
          throw std::invalid_argument("fstd: index-set size exceeds mode dimension");
      break;
    case CompletionMethod::kSliceTubeCur:
      if (n != 3) throw std::invalid_argument("slice-tube-cur runs on order-3 tensors");
      if (samples_lateral < 1 || samples_lateral > shape[2])
        throw std::invalid_argument("slice-tube-cur: frontal-slice count out of range");
      if (samples_horizontal < 1 || samples_horizontal > shape[0] * shape[1])
        throw std::invalid_argument("slice-tube-cur: tube count out of range");
      break;
    case CompletionMethod::kTubalCur:
      if (n != 3) throw std::invalid_argument("tubal-cur runs on order-3 tensors");
      if (samples_lateral < 1 || samples_lateral > shape[1])
        throw std::invalid_argument("tubal-cur: lateral sample count out of range");
      if (samples_horizontal < 1 || samples_horizontal > shape[0])
        throw std::invalid_argument("tubal-cur: horizontal sample count out of range");
      break;
  }
}

namespace {

// Seed roles inside one completion run.
enum : std::uint64_t { kRoleInit = 0, kRoleMode0 = 1, kRoleSliceTube = 32 };

std::uint64_t iteration_seed(const CompletionConfig& cfg, int iteration, std::uint64_t role) {
  const std::uint64_t stream = cfg.resample_per_iteration ? static_cast<std::uint64_t>(iteration) : 1;
  return derive_seed(cfg.seed, stream, role);
}

// The low-rank operator: one CUR approximation of c under cfg.
Tensor approximate(const Tensor& c, const CompletionConfig& cfg, int iteration) {
  switch (cfg.method) {
    case CompletionMethod::kMatrixCur: {
      const Matrix x = as_matrix(c);
      const IndexDraw cols =
          uniform_draw(x.cols(), cfg.ranks[0], iteration_seed(cfg, iteration, kRoleMode0));
      const IndexDraw rows =
          uniform_draw(x.rows(), cfg.ranks[1], iteration_seed(cfg, iteration, kRoleMode0 + 1));
      return from_matrix(matrix_cur(x, cols, rows, cfg.middle, cfg.smoother).reconstruct());
    }
    case CompletionMethod::kTuckerCur: {
      // Modes whose rank equals the extent keep an identity factor instead of
      // sampled fibers; sampling cannot realize a full identity selection.
      const Index n = c.order();
      std::vector<Matrix> factors(static_cast<std::size_t>(n));
      std::vector<IndexDraw> draws(static_cast<std::size_t>(n));
      for (Index k = 0; k < n; ++k) {
        const Index rank = cfg.ranks[static_cast<std::size_t>(k)];
        if (rank == c.extent(k)) {
          factors[static_cast<std::size_t>(k)] = Matrix::Identity(rank, rank);
          continue;
        }
        const Index pop = c.size() / c.extent(k);
        draws[static_cast<std::size_t>(k)] = uniform_draw(
            pop, rank, iteration_seed(cfg, iteration, kRoleMode0 + static_cast<std::uint64_t>(k)));
        factors[static_cast<std::size_t>(k)] = smooth_fibers(
            gather_mode_fibers(c, k, draws[static_cast<std::size_t>(k)].indices), cfg.smoother);
      }
      return make_tucker(c, std::move(factors), std::move(draws)).reconstruct();
    }
    case CompletionMethod::kTucker2Cur: {
      const IndexDraw cols = uniform_draw(c.size() / c.extent(0), cfg.ranks[0],
                                          iteration_seed(cfg, iteration, kRoleMode0));
      const IndexDraw rows = uniform_draw(c.size() / c.extent(1), cfg.ranks[1],
                                          iteration_seed(cfg, iteration, kRoleMode0 + 1));
      return tucker2_cur(c, cols, rows, cfg.smoother).reconstruct();
    }
    case CompletionMethod::kFstd: {
      std::vector<IndexDraw> sets(3);
      for (Index k = 0; k < 3; ++k)
        sets[static_cast<std::size_t>(k)] =
            uniform_draw(c.extent(k), cfg.ranks[static_cast<std::size_t>(k)],
                         iteration_seed(cfg, iteration, kRoleMode0 + static_cast<std::uint64_t>(k)));
      return fstd(c, sets, cfg.smoother).reconstruct();
    }
    case CompletionMethod::kSliceTubeCur:
      return slice_tube_cur(c, cfg.samples_lateral, cfg.samples_horizontal,
                            iteration_seed(cfg, iteration, kRoleSliceTube), cfg.smoother)
          .reconstruct();
    case CompletionMethod::kTubalCur: {
      const IndexDraw lateral = uniform_draw(c.extent(1), cfg.samples_lateral,
                                             iteration_seed(cfg, iteration, kRoleMode0));
      const IndexDraw horizontal = uniform_draw(c.extent(0), cfg.samples_horizontal,
                                                iteration_seed(cfg, iteration, kRoleMode0 + 1));
      return tubal_cur(c, lateral, horizontal, cfg.middle, cfg.smoother).reconstruct();
    }
  }
  throw std::logic_error("completion: unhandled method");
}

Tensor masked_update(const Tensor& x, const Tensor& m, const Mask& mask) {
  Tensor next = x;
  for (Index i = 0; i < next.size(); ++i)
    if (mask.observed(i)) next[i] = m[i];
  return next;
}

Tensor initial_iterate(const Tensor& m, const Mask& mask, const CompletionConfig& cfg) {
  Tensor c(m.shape());
  SplitMix64 rng(derive_seed(cfg.seed, 0, kRoleInit));
  for (Index i = 0; i < c.size(); ++i) {
    if (mask.observed(i))
      c[i] = m[i];
    else if (cfg.init == InitMode::kRandomGaussian)
      c[i] = rng.normal();
  }
  return c;
}

}  // namespace

Tensor step(const Tensor& c, const Tensor& m, const Mask& mask, const CompletionConfig& cfg,
            int iteration) {
  cfg.validate(c.shape());
  if (c.shape() != m.shape() || m.shape() != mask.shape())
    throw std::invalid_argument("step: shape mismatch");
  return masked_update(approximate(c, cfg, iteration), m, mask);
}

double relative_change(const Tensor& prev, const Tensor& next) {
  if (!prev.same_shape(next)) throw std::invalid_argument("relative_change: shape mismatch");
  const double denom = frobenius_norm(prev);
  if (denom <= 0.0) throw std::invalid_argument("relative_change: zero previous iterate");
  return frobenius_norm(next - prev) / denom;
}

CompletionResult complete(const Tensor& m, const Mask& mask, const CompletionConfig& cfg,
                          const Tensor* ground_truth, const IterationObserver& observer) {
  cfg.validate(m.shape());
  if (m.shape() != mask.shape()) throw std::invalid_argument("complete: mask shape mismatch");
  if (mask.count_observed() == 0) throw std::invalid_argument("complete: all entries missing");
  if (ground_truth && !ground_truth->same_shape(m))
    throw std::invalid_argument("complete: ground truth shape mismatch");

  CompletionResult result;
  Tensor c = initial_iterate(m, mask, cfg);

  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const auto t0 = std::chrono::steady_clock::now();
    Tensor next = masked_update(approximate(c, cfg, it), m, mask);

    IterationRecord rec;
    rec.iteration = it;
    const double prev_norm = frobenius_norm(c);
    rec.rel_change = prev_norm > 0.0 ? frobenius_norm(next - c) / prev_norm
                                     : std::numeric_limits<double>::infinity();
    if (ground_truth) {
      rec.psnr_db = psnr(*ground_truth, next);
      if (cfg.trace_ssim && m.extent(0) >= 11 && m.order() >= 2 && m.extent(1) >= 11)
        rec.ssim = ssim(*ground_truth, next);
    }
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    result.trace.records.push_back(rec);

    if (observer) observer(it, next);
    c = std::move(next);
    if (rec.rel_change < cfg.tolerance) break;
  }

  result.estimate = std::move(c);
  return result;
}

}  // namespace tcur
