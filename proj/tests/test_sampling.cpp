#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "tcur/sampling.hpp"

using namespace tcur;

TEST_CASE("slice_probs") {
  SUBCASE("equal-norm slices are uniform") {
    Tensor x({2, 2, 4});
    for (Index k = 0; k < 4; ++k) x(0, 0, k) = 3.0;
    const auto p = slice_probs(x);
    for (double v : p) CHECK(v == doctest::Approx(0.25));
  }
  SUBCASE("single nonzero slice takes all the mass") {
    Tensor x({2, 2, 3});
    x(1, 1, 2) = 4.0;
    const auto p = slice_probs(x);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == 0.0);
    CHECK(p[2] == doctest::Approx(1.0));
  }
  SUBCASE("slice norms (1, 4, 5) give (0.1, 0.4, 0.5)") {
    Tensor x({2, 2, 3});
    x(0, 0, 0) = 1.0;
    x(0, 0, 1) = 2.0;
    x(0, 0, 2) = 2.0;
    x(1, 0, 2) = 1.0;
    const auto p = slice_probs(x);
    CHECK(p[0] == doctest::Approx(0.1));
    CHECK(p[1] == doctest::Approx(0.4));
    CHECK(p[2] == doctest::Approx(0.5));
    CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero tensor is rejected") {
    CHECK_THROWS_AS(slice_probs(Tensor({2, 2, 2})), std::invalid_argument);
  }
}

TEST_CASE("tube_probs") {
  SUBCASE("equal tubes are uniform") {
    Tensor x({2, 3, 2});
    for (Index j = 0; j < 3; ++j)
      for (Index i = 0; i < 2; ++i) x(i, j, 0) = 1.0;
    const auto q = tube_probs(x);
    for (double v : q) CHECK(v == doctest::Approx(1.0 / 6.0));
  }
  SUBCASE("single nonzero tube") {
    Tensor x({2, 2, 3});
    x(1, 0, 1) = 2.0;
    const auto q = tube_probs(x);
    CHECK(q[1] == doctest::Approx(1.0));
  }
  SUBCASE("matches the per-tube sum of squares") {
    const Tensor x = oracle::random_tensor({2, 2, 2}, 5);
    const auto q = tube_probs(x);
    double total = 0.0;
    for (double v : q) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    double t00 = x(0, 0, 0) * x(0, 0, 0) + x(0, 0, 1) * x(0, 0, 1);
    const double denom = frobenius_norm(x) * frobenius_norm(x);
    CHECK(q[0] == doctest::Approx(t00 / denom));
  }
}

TEST_CASE("draw_without_replacement") {
  const std::vector<double> w{0.1, 0.4, 0.5};

  SUBCASE("exhaustive draw returns every index") {
    const IndexDraw d =
        draw_without_replacement(w, {3, Distribution::kLengthSquared, 99});
    CHECK(d.indices == std::vector<Index>{0, 1, 2});
  }
  SUBCASE("deterministic under a fixed seed") {
    const SampleSpec spec{2, Distribution::kLengthSquared, 1234};
    const IndexDraw a = draw_without_replacement(w, spec);
    const IndexDraw b = draw_without_replacement(w, spec);
    CHECK(a.indices == b.indices);
    CHECK(a.probs == b.probs);
  }
  SUBCASE("degenerate support") {
    const std::vector<double> loaded{0.0, 1.0, 0.0};
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const IndexDraw d =
          draw_without_replacement(loaded, {1, Distribution::kLengthSquared, seed});
      REQUIRE(d.indices.size() == 1);
      CHECK(d.indices[0] == 1);
      CHECK(d.probs[0] == doctest::Approx(1.0));
    }
  }
  SUBCASE("indices are distinct and sorted") {
    const Tensor x = oracle::random_tensor({6, 6, 6}, 7);
    const auto q = tube_probs(x);
    const IndexDraw d = draw_without_replacement(q, {20, Distribution::kLengthSquared, 42});
    std::set<Index> seen(d.indices.begin(), d.indices.end());
    CHECK(seen.size() == d.indices.size());
    CHECK(std::is_sorted(d.indices.begin(), d.indices.end()));
    for (double p : d.probs) {
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
    }
  }
  SUBCASE("count above support is rejected") {
    const std::vector<double> sparse{0.0, 1.0, 0.0, 2.0};
    CHECK_THROWS_AS(
        draw_without_replacement(sparse, {3, Distribution::kLengthSquared, 1}),
        std::invalid_argument);
  }
  SUBCASE("empirical single-draw frequencies match the weights") {
    std::array<int, 3> hits{0, 0, 0};
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      const IndexDraw d = draw_without_replacement(
          w, {1, Distribution::kLengthSquared, static_cast<std::uint64_t>(t)});
      hits[static_cast<std::size_t>(d.indices[0])]++;
    }
    for (std::size_t i = 0; i < 3; ++i) {
      const double freq = static_cast<double>(hits[i]) / trials;
      CHECK(std::abs(freq - w[i]) < 0.03);
    }
  }
}

TEST_CASE("uniform draws") {
  SUBCASE("ignores weights and covers the population") {
    const IndexDraw d = uniform_draw(5, 5, 3);
    CHECK(d.indices == std::vector<Index>{0, 1, 2, 3, 4});
    for (double p : d.probs) CHECK(p == doctest::Approx(0.2));
  }
  SUBCASE("deterministic and within range") {
    const IndexDraw a = uniform_draw(100, 10, 77);
    const IndexDraw b = uniform_draw(100, 10, 77);
    CHECK(a.indices == b.indices);
    for (Index i : a.indices) {
      CHECK(i >= 0);
      CHECK(i < 100);
    }
  }
  SUBCASE("count above population is rejected") {
    CHECK_THROWS_AS(uniform_draw(3, 4, 0), std::invalid_argument);
  }
}

TEST_CASE("derive_seed separates streams") {
  CHECK(derive_seed(1, 1) != derive_seed(1, 2));
  CHECK(derive_seed(1, 1, 0) != derive_seed(1, 1, 1));
  CHECK(derive_seed(1, 1) == derive_seed(1, 1));
}
