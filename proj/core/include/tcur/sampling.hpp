#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tcur/tensor.hpp"

namespace tcur {

/// SplitMix64: the counter-based 64-bit generator used for every randomized
/// decision in the library. Output is fully determined by the seed and call
/// sequence, identically on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller on two uniform draws.
  double normal();

  /// Uniform integer in [0, n).
  Index below(Index n);

 private:
  std::uint64_t state_;
};

/// Derive an independent seed for a (stream, substream) pair of one base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

enum class Distribution { kUniform, kLengthSquared };

struct SampleSpec {
  Index count = 0;
  Distribution distribution = Distribution::kUniform;
  std::uint64_t seed = 0;
};

/// Result of a without-replacement draw. Indices are strictly increasing;
/// probs holds the initial-distribution probability of each selected index
/// (weights[i] / sum(weights), or 1/n in uniform mode).
struct IndexDraw {
  std::vector<Index> indices;
  std::vector<double> probs;

  Index count() const { return static_cast<Index>(indices.size()); }
};

/// Length-squared distribution over frontal slices:
/// p_i = ||x(:,:,i)||_F^2 / ||x||_F^2. Throws on a zero tensor.
std::vector<double> slice_probs(const Tensor& x);

/// Length-squared distribution over tube positions (i,j), linearized as
/// i + I_1 * j: q = ||x(i,j,:)||_2^2 / ||x||_F^2. Throws on a zero tensor.
std::vector<double> tube_probs(const Tensor& x);

/// Seeded sampling without replacement. Uniform mode ignores the weight
/// values and uses only the population size. Weighted mode draws
/// sequentially, renormalizing the remaining weights after each pick.
IndexDraw draw_without_replacement(std::span<const double> weights, const SampleSpec& spec);

/// Uniform draw of count indices from [0, population).
IndexDraw uniform_draw(Index population, Index count, std::uint64_t seed);

}  // namespace tcur
