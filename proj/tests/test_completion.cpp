#include <doctest.h>

#include <cstring>

#include "oracles.hpp"
#include "tcur/completion.hpp"

using namespace tcur;

namespace {

Tensor exact_tucker_instance(const std::vector<Index>& shape, const std::vector<Index>& ranks,
                             std::uint64_t seed) {
  Tensor core = oracle::random_tensor(ranks, seed);
  Tensor x = core;
  for (std::size_t n = 0; n < shape.size(); ++n)
    x = mode_product(
        x, oracle::random_matrix(shape[n], ranks[n], seed + 13 * static_cast<std::uint64_t>(n) + 1),
        static_cast<Index>(n));
  return x;
}

Mask random_mask(const std::vector<Index>& shape, double missing_ratio, std::uint64_t seed) {
  Mask mask = Mask::all_observed(shape);
  const Index total = mask.size();
  const Index nmiss = static_cast<Index>(std::llround(missing_ratio * static_cast<double>(total)));
  if (nmiss > 0) {
    const IndexDraw d = uniform_draw(total, nmiss, seed);
    for (Index i : d.indices) mask.set(i, false);
  }
  return mask;
}

bool observed_entries_bitwise_equal(const Tensor& a, const Tensor& b, const Mask& mask) {
  for (Index i = 0; i < a.size(); ++i) {
    if (!mask.observed(i)) continue;
    if (std::memcmp(&a[i], &b[i], sizeof(double)) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("mask") {
  Mask m = Mask::all_observed({2, 3});
  CHECK(m.count_observed() == 6);
  m.set(4, false);
  CHECK(m.count_observed() == 5);
  Tensor t = oracle::random_tensor({2, 3}, 1);
  Tensor pt = t;
  m.project(pt);
  CHECK(pt[4] == 0.0);
  CHECK(pt[0] == t[0]);

  Tensor ind({2, 2});
  ind[0] = 1.0;
  ind[3] = 1.0;
  const Mask f = Mask::from_indicator(ind);
  CHECK(f.count_observed() == 2);
  ind[1] = 0.5;
  CHECK_THROWS_AS(Mask::from_indicator(ind), std::invalid_argument);
}

TEST_CASE("relative_change") {
  const Tensor x = oracle::random_tensor({3, 3}, 2);
  CHECK(relative_change(x, x) == 0.0);
  CHECK(relative_change(x, 2.0 * x) == doctest::Approx(1.0));

  const Tensor y = oracle::random_tensor({3, 3}, 3);
  CHECK(relative_change(x, y) == doctest::Approx(frobenius_norm(y - x) / frobenius_norm(x)));
  CHECK_THROWS_AS(relative_change(Tensor({3, 3}), y), std::invalid_argument);
  CHECK_THROWS_AS(relative_change(x, Tensor({2, 2})), std::invalid_argument);
}

TEST_CASE("complete with an all-observed mask returns the data after one iteration") {
  const Tensor m = oracle::random_tensor({6, 6, 3}, 4);
  const Mask mask = Mask::all_observed(m.shape());
  CompletionConfig cfg;
  cfg.method = CompletionMethod::kTucker2Cur;
  cfg.ranks = {2, 2};
  cfg.seed = 5;
  const CompletionResult res = complete(m, mask, cfg);
  CHECK(res.trace.records.size() == 1);
  CHECK(oracle::max_abs_diff(res.estimate, m) == 0.0);
}

TEST_CASE("observed entries are fixed bitwise at every iteration") {
  const Tensor gt = exact_tucker_instance({10, 10, 10}, {2, 2, 2}, 6);
  const Mask mask = random_mask(gt.shape(), 0.3, 7);
  Tensor m = gt;
  mask.project(m);

  CompletionConfig cfg;
  cfg.method = CompletionMethod::kTuckerCur;
  cfg.ranks = {2, 2, 2};
  cfg.max_iterations = 25;
  cfg.tolerance = 0.0;
  cfg.seed = 8;
  int iterations_seen = 0;
  const CompletionResult res =
      complete(m, mask, cfg, nullptr, [&](int, const Tensor& iterate) {
        ++iterations_seen;
        CHECK(observed_entries_bitwise_equal(iterate, m, mask));
      });
  CHECK(iterations_seen == 25);
  CHECK(observed_entries_bitwise_equal(res.estimate, m, mask));
}

TEST_CASE("completes an exact low-Tucker-rank tensor from 70% of its entries") {
  const Tensor gt = exact_tucker_instance({12, 12, 12}, {2, 2, 2}, 9);
  const Mask mask = random_mask(gt.shape(), 0.3, 10);
  Tensor m = gt;
  mask.project(m);

  CompletionConfig cfg;
  cfg.method = CompletionMethod::kTuckerCur;
  cfg.ranks = {2, 2, 2};
  cfg.max_iterations = 200;
  cfg.tolerance = 1e-9;
  cfg.seed = 11;
  const CompletionResult res = complete(m, mask, cfg, &gt);
  CHECK(oracle::rel_err(res.estimate, gt) < 1e-3);
  CHECK(res.trace.records.back().psnr_db.has_value());
}

TEST_CASE("step") {
  const Tensor gt = exact_tucker_instance({8, 8, 8}, {2, 2, 2}, 12);
  const Mask mask = random_mask(gt.shape(), 0.2, 13);
  Tensor m = gt;
  mask.project(m);
  CompletionConfig cfg;
  cfg.method = CompletionMethod::kTuckerCur;
  cfg.ranks = {2, 2, 2};
  cfg.seed = 14;

  SUBCASE("a consistent exact model is a fixed point") {
    // Ground truth observed everywhere it matters: the CUR approximation of
    // gt is exact, so masking changes nothing.
    const Tensor next = step(gt, gt, Mask::all_observed(gt.shape()), cfg, 1);
    CHECK(frobenius_norm(next - gt) / frobenius_norm(gt) < 1e-8);
  }
  SUBCASE("never alters observed entries") {
    const Tensor next = step(m, m, mask, cfg, 1);
    CHECK(observed_entries_bitwise_equal(next, m, mask));
  }
  SUBCASE("deterministic given the iteration index") {
    const Tensor a = step(m, m, mask, cfg, 3);
    const Tensor b = step(m, m, mask, cfg, 3);
    CHECK(oracle::max_abs_diff(a, b) == 0.0);
  }
  SUBCASE("fixed draws when resampling is disabled") {
    CompletionConfig frozen = cfg;
    frozen.resample_per_iteration = false;
    const Tensor a = step(m, m, mask, frozen, 1);
    const Tensor b = step(m, m, mask, frozen, 2);
    CHECK(oracle::max_abs_diff(a, b) == 0.0);
  }
}

TEST_CASE("determinism of full runs") {
  const Tensor gt = exact_tucker_instance({9, 9, 9}, {2, 2, 2}, 15);
  const Mask mask = random_mask(gt.shape(), 0.4, 16);
  Tensor m = gt;
  mask.project(m);
  CompletionConfig cfg;
  cfg.method = CompletionMethod::kTubalCur;
  cfg.samples_lateral = 3;
  cfg.samples_horizontal = 3;
  cfg.max_iterations = 5;
  cfg.tolerance = 0.0;
  cfg.seed = 17;
  const CompletionResult a = complete(m, mask, cfg);
  const CompletionResult b = complete(m, mask, cfg);
  CHECK(oracle::max_abs_diff(a.estimate, b.estimate) == 0.0);
}

TEST_CASE("random-gaussian initialization is seeded") {
  const Tensor gt = oracle::random_tensor({6, 6, 6}, 18);
  const Mask mask = random_mask(gt.shape(), 0.5, 19);
  Tensor m = gt;
  mask.project(m);
  CompletionConfig cfg;
  cfg.method = CompletionMethod::kFstd;
  cfg.ranks = {3, 3, 3};
  cfg.init = InitMode::kRandomGaussian;
  cfg.max_iterations = 3;
  cfg.tolerance = 0.0;
  cfg.seed = 20;
  const CompletionResult a = complete(m, mask, cfg);
  const CompletionResult b = complete(m, mask, cfg);
  CHECK(oracle::max_abs_diff(a.estimate, b.estimate) == 0.0);
}

TEST_CASE("config validation") {
  CompletionConfig cfg;
  cfg.method = CompletionMethod::kTuckerCur;
  cfg.ranks = {2, 2};
  CHECK_THROWS_AS(cfg.validate({4, 4, 4}), std::invalid_argument);
  cfg.ranks = {2, 2, 9};
  CHECK_THROWS_AS(cfg.validate({4, 4, 4}), std::invalid_argument);
  cfg.ranks = {2, 2, 2};
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate({4, 4, 4}), std::invalid_argument);
  cfg.max_iterations = 10;
  CHECK_NOTHROW(cfg.validate({4, 4, 4}));

  CompletionConfig st;
  st.method = CompletionMethod::kSliceTubeCur;
  st.samples_lateral = 9;
  st.samples_horizontal = 4;
  CHECK_THROWS_AS(st.validate({4, 4, 4}), std::invalid_argument);

  const Tensor m = oracle::random_tensor({4, 4, 4}, 21);
  Mask none = Mask::all_observed(m.shape());
  for (Index i = 0; i < none.size(); ++i) none.set(i, false);
  CompletionConfig ok;
  ok.method = CompletionMethod::kTucker2Cur;
  ok.ranks = {2, 2};
  CHECK_THROWS_AS(complete(m, none, ok), std::invalid_argument);
}
