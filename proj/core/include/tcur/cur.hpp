#pragma once

#include <cstdint>
#include <vector>

#include "tcur/sampling.hpp"
#include "tcur/smoothing.hpp"
#include "tcur/tensor.hpp"

namespace tcur {

/// How the middle factor of a CUR model is computed: the least-squares
/// solution C+ X R+, or the pseudoinverse of the intersection block.
enum class MiddleMode { kLeastSquares, kIntersection };

struct MatrixCurModel {
  Matrix c;  // sampled columns, I x R1
  Matrix u;  // R1 x R2
  Matrix r;  // sampled rows, R2 x J
  MiddleMode mode = MiddleMode::kLeastSquares;
  IndexDraw cols;
  IndexDraw rows;

  Matrix reconstruct() const { return c * u * r; }
};

struct MatrixCyModel {
  Matrix c;  // sampled columns, I x R
  Matrix y;  // R x J
  IndexDraw cols;

  Matrix reconstruct() const { return c * y; }
};

/// Tucker factorization produced by fiber sampling: core plus one factor per
/// mode. Sampled fiber positions and any modes whose factor came out
/// numerically rank-deficient are recorded alongside.
struct TuckerModel {
  Tensor core;
  std::vector<Matrix> factors;     // factor n is extent(n) x R_n
  std::vector<IndexDraw> draws;    // empty draw for modes not sampled
  std::vector<Index> deficient_modes;

  Tensor reconstruct() const;
};

struct SliceTubeModel {
  Tensor c;            // sampled frontal slices, I1 x I2 x L1
  Matrix r;            // sampled tubes as rows, L2 x I3
  Matrix u;            // L1 x L2
  Eigen::VectorXd d1;  // slice scaling 1/sqrt(L1 p_t)
  Eigen::VectorXd d2;  // tube scaling 1/sqrt(L2 q_t)
  IndexDraw slices;
  IndexDraw tubes;

  Tensor reconstruct() const;
};

struct TubalModel {
  Tensor c;  // lateral slices, I1 x L1 x I3
  Tensor u;  // L1 x L2 x I3
  Tensor r;  // horizontal slices, L2 x I2 x I3
  MiddleMode mode = MiddleMode::kLeastSquares;
  IndexDraw lateral;
  IndexDraw horizontal;

  Tensor reconstruct() const;
};

struct TubalCxModel {
  Tensor c;  // lateral slices, I1 x L x I3
  Tensor y;  // L x I2 x I3
  IndexDraw lateral;

  Tensor reconstruct() const;
};

/// Matrix CUR from sampled columns and rows. Least-squares mode sets
/// U = C+ X R+; intersection mode sets U = W+ with W = X(rows, cols).
/// A smoother, when enabled, is applied to the sampled columns and rows
/// before the middle factor is computed.
MatrixCurModel matrix_cur(const Matrix& x, const IndexDraw& cols, const IndexDraw& rows,
                          MiddleMode mode = MiddleMode::kLeastSquares,
                          const SmootherConfig& smoother = {});

/// Column selection X ~= C Y with Y = C+ X, the projection of X onto span(C).
MatrixCyModel matrix_cy(const Matrix& x, const IndexDraw& cols,
                        const SmootherConfig& smoother = {});

/// Fiber-sampling Tucker CUR: factor n holds the sampled n-mode fibers, the
/// core is x multiplied by every factor pseudoinverse.
TuckerModel tucker_cur(const Tensor& x, const std::vector<IndexDraw>& fiber_draws,
                       const SmootherConfig& smoother = {});

/// Tucker-2 on a 3rd-order tensor: sampled mode-1 and mode-2 fibers, identity
/// in mode 3.
TuckerModel tucker2_cur(const Tensor& x, const IndexDraw& col_draw, const IndexDraw& row_draw,
                        const SmootherConfig& smoother = {});

/// Fiber-sampling Tucker CUR derived from the intersection subtensor
/// W = x(I_1, I_2, I_3): core W with factors A_n W_(n)+, where A_n gathers
/// the fibers crossing the other two index sets. mode_indices hold positions
/// into each mode (sizes P_1, P_2, P_3), not unfolding columns.
TuckerModel fstd(const Tensor& x, const std::vector<IndexDraw>& mode_indices,
                 const SmootherConfig& smoother = {});

/// Assemble a Tucker model from explicit factor matrices: core
/// x x_1 A_1+ ... x_N A_N+. Used by the samplers above and by callers that
/// mix sampled and fixed (e.g. identity) factors.
TuckerModel make_tucker(const Tensor& x, std::vector<Matrix> factors,
                        std::vector<IndexDraw> draws);

/// Slice-tube CUR: L1 frontal slices and L2 tubes drawn by length-squared
/// sampling, middle matrix U = D1 (D2 W D1)+ D2 over the intersection matrix
/// W (tube-major rows, slice-major columns). Reconstructs as C x_3 (U R)^T.
SliceTubeModel slice_tube_cur(const Tensor& x, Index num_slices, Index num_tubes,
                              std::uint64_t seed, const SmootherConfig& smoother = {});

/// Tubal CUR under the t-product: C lateral slices, R horizontal slices,
/// U = C+ * x * R+ or W+ of the intersection subtensor.
TubalModel tubal_cur(const Tensor& x, const IndexDraw& lateral, const IndexDraw& horizontal,
                     MiddleMode mode = MiddleMode::kLeastSquares,
                     const SmootherConfig& smoother = {});

/// Lateral-slice selection X ~= C * Y with Y = C+ * X.
TubalCxModel tubal_cx(const Tensor& x, const IndexDraw& lateral,
                      const SmootherConfig& smoother = {});

}  // namespace tcur
