#include <doctest.h>

#include "oracles.hpp"
#include "tcur/cur.hpp"
#include "tcur/tubal.hpp"

using namespace tcur;

namespace {

IndexDraw draw_of(std::vector<Index> idx) {
  IndexDraw d;
  d.probs.assign(idx.size(), 1.0);
  d.indices = std::move(idx);
  return d;
}

Tensor tubal_rank2_instance(Index i1, Index i2, Index i3, std::uint64_t seed) {
  const Tensor a = oracle::random_tensor({i1, 2, i3}, seed);
  const Tensor b = oracle::random_tensor({2, i2, i3}, seed + 1);
  return tprod(a, b);
}

}  // namespace

TEST_CASE("tubal_cur") {
  SUBCASE("tubal-rank-2 tensor recovered from 2 + 2 slices") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Tensor x = tubal_rank2_instance(6, 7, 4, 2000 + 11 * seed);
      const IndexDraw lat = uniform_draw(7, 2, 2100 + seed);
      const IndexDraw hor = uniform_draw(6, 2, 2200 + seed);
      for (MiddleMode mode : {MiddleMode::kLeastSquares, MiddleMode::kIntersection}) {
        const TubalModel m = tubal_cur(x, lat, hor, mode);
        CHECK(oracle::rel_err(m.reconstruct(), x) < 1e-8);
      }
    }
  }
  SUBCASE("full selection is exact") {
    const Tensor x = oracle::random_tensor({4, 5, 3}, 71);
    const TubalModel m =
        tubal_cur(x, draw_of({0, 1, 2, 3, 4}), draw_of({0, 1, 2, 3}), MiddleMode::kLeastSquares);
    CHECK(oracle::rel_err(m.reconstruct(), x) < 1e-10);
  }
  SUBCASE("single-tube tensors reduce to matrix_cur") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Tensor x = oracle::random_tensor({6, 7, 1}, 72 + seed);
      const Matrix xm = as_matrix(reshape(x, {6, 7}));
      const IndexDraw lat = uniform_draw(7, 3, 73 + seed);
      const IndexDraw hor = uniform_draw(6, 3, 74 + seed);
      for (MiddleMode mode : {MiddleMode::kLeastSquares, MiddleMode::kIntersection}) {
        const Tensor t3 = tubal_cur(x, lat, hor, mode).reconstruct();
        const Matrix m2 = matrix_cur(xm, lat, hor, mode).reconstruct();
        CHECK((as_matrix(reshape(t3, {6, 7})) - m2).norm() < 1e-10);
      }
    }
  }
  SUBCASE("finite output on rank-deficient input") {
    Tensor x({4, 4, 2});
    x(0, 0, 0) = 1.0;
    const TubalModel m = tubal_cur(x, draw_of({1, 2}), draw_of({1, 2}), MiddleMode::kLeastSquares);
    const Tensor r = m.reconstruct();
    for (Index i = 0; i < r.size(); ++i) CHECK(std::isfinite(r[i]));
  }
}

TEST_CASE("tubal_cx") {
  SUBCASE("all lateral slices is exact") {
    const Tensor x = oracle::random_tensor({4, 3, 5}, 81);
    const TubalCxModel m = tubal_cx(x, draw_of({0, 1, 2}));
    CHECK(oracle::rel_err(m.reconstruct(), x) < 1e-10);
  }
  SUBCASE("tubal-rank-2 tensor from 2 spanning lateral slices") {
    const Tensor x = tubal_rank2_instance(5, 6, 4, 82);
    const TubalCxModel m = tubal_cx(x, uniform_draw(6, 2, 83));
    CHECK(oracle::rel_err(m.reconstruct(), x) < 1e-8);
  }
  SUBCASE("single-tube tensors reduce to matrix_cy") {
    const Tensor x = oracle::random_tensor({5, 6, 1}, 84);
    const Matrix xm = as_matrix(reshape(x, {5, 6}));
    const IndexDraw lat = uniform_draw(6, 2, 85);
    const Tensor t3 = tubal_cx(x, lat).reconstruct();
    const Matrix m2 = matrix_cy(xm, lat).reconstruct();
    CHECK((as_matrix(reshape(t3, {5, 6})) - m2).norm() < 1e-10);
  }
}
