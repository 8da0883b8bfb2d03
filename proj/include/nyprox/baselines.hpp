#pragma once

#include <nyprox/types.hpp>

#include <optional>

namespace nyprox {

/// Landmark MDS: classical scaling of the landmark block plus triangulation of
/// the remaining points. Only positive directions survive (implicit clipping).
struct LmdsEmbedding {
  Matrix landmark_coords;       ///< m x k
  Matrix projection;            ///< k x m, Lambda^{-1/2} U^T
  Vector mean_landmark_dissim;  ///< column means of D_core

  Index dim() const { return landmark_coords.cols(); }
};

/// `dim` unset keeps every positive direction. Throws DataError when the
/// centered landmark block has no positive eigenvalue.
LmdsEmbedding lmds_fit(const Matrix& d_core, std::optional<Index> dim = std::nullopt,
                       double rel_tol = 1e-10);

/// x = -1/2 projection (d - mean) per row of the t x m block.
Matrix lmds_project(const LmdsEmbedding& e, const Matrix& d_new);

Matrix lmds_similarities(const Matrix& coords_a, const Matrix& coords_b);

/// Each row of the N x m block is taken as the feature vector of that sample.
Matrix dissimilarity_space(const Matrix& d_cross);

}  // namespace nyprox
