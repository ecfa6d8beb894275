#include "tcur/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace tcur {

double SplitMix64::normal() {
  double u1 = uniform01();
  while (u1 == 0.0) u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Index SplitMix64::below(Index n) {
  if (n <= 0) throw std::invalid_argument("SplitMix64::below: n must be positive");
  return static_cast<Index>(next() % static_cast<std::uint64_t>(n));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream) {
  SplitMix64 g(seed);
  const std::uint64_t h =
      g.next() ^ (stream * 0xD1B54A32D192ED03ull) ^ (substream * 0x8CB92BA72F3D8DD7ull);
  return SplitMix64(h).next();
}

std::vector<double> slice_probs(const Tensor& x) {
  if (x.order() != 3) throw std::invalid_argument("slice_probs: order-3 tensor required");
  const Index i3 = x.extent(2);
  const Index slice_size = x.extent(0) * x.extent(1);
  std::vector<double> p(static_cast<std::size_t>(i3), 0.0);
  auto data = x.data();
  double total = 0.0;
  for (Index k = 0; k < i3; ++k) {
    double s = 0.0;
    const std::size_t base = static_cast<std::size_t>(k * slice_size);
    for (Index i = 0; i < slice_size; ++i) {
      const double v = data[base + static_cast<std::size_t>(i)];
      s += v * v;
    }
    p[static_cast<std::size_t>(k)] = s;
    total += s;
  }
  if (total <= 0.0) throw std::invalid_argument("slice_probs: zero tensor has no distribution");
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> tube_probs(const Tensor& x) {
  if (x.order() != 3) throw std::invalid_argument("tube_probs: order-3 tensor required");
  const Index positions = x.extent(0) * x.extent(1);
  const Index i3 = x.extent(2);
  std::vector<double> q(static_cast<std::size_t>(positions), 0.0);
  auto data = x.data();
  double total = 0.0;
  for (Index pos = 0; pos < positions; ++pos) {
    double s = 0.0;
    for (Index k = 0; k < i3; ++k) {
      const double v = data[static_cast<std::size_t>(pos + k * positions)];
      s += v * v;
    }
    q[static_cast<std::size_t>(pos)] = s;
    total += s;
  }
  if (total <= 0.0) throw std::invalid_argument("tube_probs: zero tensor has no distribution");
  for (double& v : q) v /= total;
  return q;
}

namespace {

// Fenwick tree over nonnegative weights for O(log n) sequential draws.
class PrefixTree {
 public:
  explicit PrefixTree(std::span<const double> weights)
      : n_(static_cast<Index>(weights.size())), tree_(weights.size() + 1, 0.0) {
    for (Index i = 0; i < n_; ++i) add(i, weights[static_cast<std::size_t>(i)]);
  }

  void add(Index i, double delta) {
    for (Index k = i + 1; k <= n_; k += k & (-k)) tree_[static_cast<std::size_t>(k)] += delta;
  }

  double total() const {
    double s = 0.0;
    for (Index k = n_; k > 0; k -= k & (-k)) s += tree_[static_cast<std::size_t>(k)];
    return s;
  }

  // Smallest index with prefix sum > target.
  Index find(double target) const {
    Index pos = 0;
    Index mask = 1;
    while ((mask << 1) <= n_) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      const Index next = pos + mask;
      if (next <= n_ && tree_[static_cast<std::size_t>(next)] <= target) {
        target -= tree_[static_cast<std::size_t>(next)];
        pos = next;
      }
    }
    return std::min(pos, n_ - 1);
  }

 private:
  Index n_;
  std::vector<double> tree_;
};

void sort_draw(IndexDraw& draw) {
  std::vector<std::size_t> perm(draw.indices.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return draw.indices[a] < draw.indices[b]; });
  IndexDraw sorted;
  sorted.indices.reserve(perm.size());
  sorted.probs.reserve(perm.size());
  for (std::size_t p : perm) {
    sorted.indices.push_back(draw.indices[p]);
    sorted.probs.push_back(draw.probs[p]);
  }
  draw = std::move(sorted);
}

}  // namespace

IndexDraw uniform_draw(Index population, Index count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("uniform_draw: count must be positive");
  if (count > population)
    throw std::invalid_argument("uniform_draw: count exceeds population size");
  SplitMix64 rng(seed);
  std::vector<Index> pool(static_cast<std::size_t>(population));
  std::iota(pool.begin(), pool.end(), Index{0});
  IndexDraw draw;
  draw.indices.reserve(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i) {
    const Index j = i + rng.below(population - i);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    draw.indices.push_back(pool[static_cast<std::size_t>(i)]);
  }
  draw.probs.assign(static_cast<std::size_t>(count), 1.0 / static_cast<double>(population));
  sort_draw(draw);
  return draw;
}

IndexDraw draw_without_replacement(std::span<const double> weights, const SampleSpec& spec) {
  const Index n = static_cast<Index>(weights.size());
  if (spec.count < 1) throw std::invalid_argument("draw: count must be positive");

  if (spec.distribution == Distribution::kUniform) return uniform_draw(n, spec.count, spec.seed);

  double total = 0.0;
  Index support = 0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("draw: weights must be finite and nonnegative");
    if (w > 0.0) ++support;
    total += w;
  }
  if (spec.count > support) throw std::invalid_argument("draw: count exceeds support size");

  PrefixTree tree(weights);
  SplitMix64 rng(spec.seed);
  IndexDraw draw;
  draw.indices.reserve(static_cast<std::size_t>(spec.count));
  double remaining = total;
  for (Index d = 0; d < spec.count; ++d) {
    const double target = rng.uniform01() * remaining;
    Index idx = tree.find(target);
    // Floating-point slack can land on an exhausted entry; move to a live one.
    while (weights[static_cast<std::size_t>(idx)] <= 0.0 ||
           std::find(draw.indices.begin(), draw.indices.end(), idx) != draw.indices.end()) {
      idx = (idx + 1) % n;
    }
    draw.indices.push_back(idx);
    draw.probs.push_back(weights[static_cast<std::size_t>(idx)] / total);
    remaining -= weights[static_cast<std::size_t>(idx)];
    tree.add(idx, -weights[static_cast<std::size_t>(idx)]);
  }
  sort_draw(draw);
  return draw;
}

}  // namespace tcur
