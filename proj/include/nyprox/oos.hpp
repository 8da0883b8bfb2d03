#pragma once

#include <nyprox/corrections.hpp>

namespace nyprox {

struct Extension {
  Matrix to_training;         ///< t x N corrected similarities
  std::optional<Matrix> self; ///< t x t corrected similarities among the new points
};

/// Corrected similarities of t new points given their uncorrected t x m
/// similarities to the landmarks: S_new W* S_{N,m}^T (and S_new W* S_new^T).
Extension extend_similarities(const CorrectedModel& model, const Matrix& s_new, bool with_self = false);

/// Same for squared dissimilarities to the landmarks; rows are first centered
/// with the model's frozen training statistics. Throws UsageError for models
/// without statistics.
Extension extend_dissimilarities(const CorrectedModel& model, const Matrix& d_new, bool with_self = false);

/// Explicit feature rows S_new R for new points (classifier input).
Matrix extend_features(const CorrectedModel& model, const Matrix& s_new);

/// Centered landmark similarities of new points, dispatching on the model's source kind.
Matrix landmark_similarities(const CorrectedModel& model, const Matrix& prox_new);

}  // namespace nyprox
