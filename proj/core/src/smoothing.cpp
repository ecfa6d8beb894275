#include "tcur/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tcur {

int SmootherConfig::resolved_degree() const {
  if (degree >= 0) return degree;
  switch (method) {
    case SmoothMethod::kLowess:
    case SmoothMethod::kRlowess:
      return 1;
    default:
      return 2;
  }
}

int SmootherConfig::resolved_robust_iterations() const {
  if (robust_iterations >= 0) return robust_iterations;
  return (method == SmoothMethod::kRloess || method == SmoothMethod::kRlowess) ? 5 : 0;
}

Index SmootherConfig::window_length(Index signal_length) const {
  double s = span < 1.0 ? span * static_cast<double>(signal_length) : span;
  Index w = static_cast<Index>(std::llround(s));
  w = std::clamp<Index>(w, 1, signal_length);
  if (w % 2 == 0) w -= 1;  // centered windows need odd length
  return std::max<Index>(w, 1);
}

void SmootherConfig::validate() const {
  if (span <= 0.0) throw std::invalid_argument("smoother: span must be positive");
  if (span >= 1.0 && std::llround(span) < 1)
    throw std::invalid_argument("smoother: integer span must be >= 1");
  if (degree >= 0 && span >= 1.0 && degree >= std::llround(span))
    throw std::invalid_argument("smoother: degree must be smaller than span");
  if (robust_iterations < -1) throw std::invalid_argument("smoother: bad robust_iterations");
}

SmoothMethod smooth_method_from_name(const std::string& name) {
  if (name == "none") return SmoothMethod::kNone;
  if (name == "moving-average" || name == "movmean") return SmoothMethod::kMovingAverage;
  if (name == "loess") return SmoothMethod::kLoess;
  if (name == "lowess") return SmoothMethod::kLowess;
  if (name == "rloess") return SmoothMethod::kRloess;
  if (name == "rlowess") return SmoothMethod::kRlowess;
  if (name == "savitzky-golay" || name == "sgolay") return SmoothMethod::kSavitzkyGolay;
  throw std::invalid_argument("unknown smoothing method: " + name);
}

std::string smooth_method_name(SmoothMethod method) {
  switch (method) {
    case SmoothMethod::kNone: return "none";
    case SmoothMethod::kMovingAverage: return "moving-average";
    case SmoothMethod::kLoess: return "loess";
    case SmoothMethod::kLowess: return "lowess";
    case SmoothMethod::kRloess: return "rloess";
    case SmoothMethod::kRlowess: return "rlowess";
    case SmoothMethod::kSavitzkyGolay: return "savitzky-golay";
  }
  return "none";
}

namespace {

std::vector<double> moving_average(std::span<const double> y, Index w, MovingAverageKind kind) {
  const Index n = static_cast<Index>(y.size());
  std::vector<double> z(y.size());
  std::vector<double> prefix(y.size() + 1, 0.0);
  for (Index i = 0; i < n; ++i)
    prefix[static_cast<std::size_t>(i + 1)] = prefix[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)];
  auto window_mean = [&](Index lo, Index hi) {  // inclusive bounds
    return (prefix[static_cast<std::size_t>(hi + 1)] - prefix[static_cast<std::size_t>(lo)]) /
           static_cast<double>(hi - lo + 1);
  };
  const Index h = (w - 1) / 2;
  for (Index i = 0; i < n; ++i) {
    switch (kind) {
      case MovingAverageKind::kCentered:
        z[static_cast<std::size_t>(i)] = window_mean(std::max<Index>(0, i - h), std::min(n - 1, i + h));
        break;
      case MovingAverageKind::kCumulative:
        z[static_cast<std::size_t>(i)] = window_mean(0, i);
        break;
      case MovingAverageKind::kTrailing:
        z[static_cast<std::size_t>(i)] = window_mean(std::max<Index>(0, i - w + 1), i);
        break;
    }
  }
  return z;
}

// Least-squares polynomial fit on a window, evaluated at local coordinate 0.
// Weights, when present, multiply the residuals; rank deficiency falls back
// to the pivoted-QR basic solution.
double local_poly_value(std::span<const double> y, Index start, Index len, Index center,
                        int degree, const double* weights) {
  const int d = static_cast<int>(std::min<Index>(degree, len - 1));
  Matrix a(len, d + 1);
  Eigen::VectorXd b(len);
  for (Index j = 0; j < len; ++j) {
    const double t = static_cast<double>(start + j - center);
    const double sw = weights ? std::sqrt(weights[static_cast<std::size_t>(j)]) : 1.0;
    double power = 1.0;
    for (int p = 0; p <= d; ++p) {
      a(j, p) = sw * power;
      power *= t;
    }
    b(j) = sw * y[static_cast<std::size_t>(start + j)];
  }
  const Eigen::VectorXd beta = a.colPivHouseholderQr().solve(b);
  return beta(0);
}

std::vector<double> savitzky_golay(std::span<const double> y, Index w, int degree) {
  const Index n = static_cast<Index>(y.size());
  std::vector<double> z(y.size());
  const Index h = (w - 1) / 2;
  for (Index i = 0; i < n; ++i) {
    // Keep the full window near the edges by shifting it inward; the fitted
    // polynomial is evaluated off-center there.
    const Index start = std::clamp<Index>(i - h, 0, n - w);
    z[static_cast<std::size_t>(i)] = local_poly_value(y, start, w, i, degree, nullptr);
  }
  return z;
}

std::vector<double> loess_pass(std::span<const double> y, Index w, int degree,
                               const std::vector<double>* robust_weights) {
  const Index n = static_cast<Index>(y.size());
  std::vector<double> z(y.size());
  std::vector<double> wbuf(static_cast<std::size_t>(w));
  for (Index i = 0; i < n; ++i) {
    const Index start = std::clamp<Index>(i - (w - 1) / 2, 0, n - w);
    double dmax = 0.0;
    for (Index j = 0; j < w; ++j)
      dmax = std::max(dmax, std::abs(static_cast<double>(start + j - i)));
    double wsum = 0.0;
    for (Index j = 0; j < w; ++j) {
      const double d = std::abs(static_cast<double>(start + j - i));
      const double u = dmax > 0.0 ? d / dmax : 0.0;
      double tw = u < 1.0 ? std::pow(1.0 - u * u * u, 3) : 0.0;
      if (robust_weights) tw *= (*robust_weights)[static_cast<std::size_t>(start + j)];
      wbuf[static_cast<std::size_t>(j)] = tw;
      wsum += tw;
    }
    if (wsum <= 0.0) {
      z[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i)];
      continue;
    }
    z[static_cast<std::size_t>(i)] = local_poly_value(y, start, w, i, degree, wbuf.data());
  }
  return z;
}

std::vector<double> loess(std::span<const double> y, Index w, int degree, int robust_iters) {
  std::vector<double> z = loess_pass(y, w, degree, nullptr);
  if (robust_iters <= 0) return z;
  const Index n = static_cast<Index>(y.size());
  std::vector<double> rw(y.size(), 1.0);
  std::vector<double> resid(y.size());
  for (int it = 0; it < robust_iters; ++it) {
    for (Index i = 0; i < n; ++i)
      resid[static_cast<std::size_t>(i)] =
          std::abs(y[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(i)]);
    std::vector<double> sorted(resid);
    const std::size_t mid = sorted.size() / 2;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
    double median = sorted[mid];
    if (sorted.size() % 2 == 0) {
      const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
      median = 0.5 * (median + lower);
    }
    const double cutoff = 6.0 * median;
    if (cutoff <= 0.0) break;  // already interpolating the data
    for (Index i = 0; i < n; ++i) {
      const double r = resid[static_cast<std::size_t>(i)] / cutoff;
      rw[static_cast<std::size_t>(i)] = r < 1.0 ? (1.0 - r * r) * (1.0 - r * r) : 0.0;
    }
    z = loess_pass(y, w, degree, &rw);
  }
  return z;
}

}  // namespace

std::vector<double> smooth(std::span<const double> signal, const SmootherConfig& cfg) {
  cfg.validate();
  if (signal.empty()) throw std::invalid_argument("smooth: empty signal");
  if (cfg.method == SmoothMethod::kNone || signal.size() == 1)
    return {signal.begin(), signal.end()};

  const Index n = static_cast<Index>(signal.size());
  const Index w = cfg.window_length(n);
  switch (cfg.method) {
    case SmoothMethod::kMovingAverage:
      return moving_average(signal, w, cfg.ma_kind);
    case SmoothMethod::kSavitzkyGolay:
      return savitzky_golay(signal, w, cfg.resolved_degree());
    case SmoothMethod::kLoess:
    case SmoothMethod::kLowess:
    case SmoothMethod::kRloess:
    case SmoothMethod::kRlowess:
      return loess(signal, w, cfg.resolved_degree(), cfg.resolved_robust_iterations());
    case SmoothMethod::kNone:
      break;
  }
  return {signal.begin(), signal.end()};
}

Matrix smooth_fibers(const Matrix& m, const SmootherConfig& cfg) {
  if (!cfg.enabled()) return m;
  Matrix out(m.rows(), m.cols());
  std::vector<double> col(static_cast<std::size_t>(m.rows()));
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) col[static_cast<std::size_t>(r)] = m(r, c);
    const std::vector<double> s = smooth(col, cfg);
    for (Index r = 0; r < m.rows(); ++r) out(r, c) = s[static_cast<std::size_t>(r)];
  }
  return out;
}

}  // namespace tcur
