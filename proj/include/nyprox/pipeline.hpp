#pragma once

#include <nyprox/corrections.hpp>
#include <nyprox/dataio.hpp>

namespace nyprox {

/// Linear-cost pipeline on blocks: optional landmark double centering of
/// squared dissimilarities, indefinite Nystrom eigendecomposition, correction.
CorrectedModel fit_corrected_model(ProximityKind kind, const Matrix& cross, const Matrix& core,
                                   IndexList landmarks, const CorrectionOptions& options);

/// Variant for several fits sharing one landmark block (cross-validation folds):
/// `core_pinv` is pinv(core) of the raw block, computed once by the caller.
CorrectedModel fit_corrected_model(ProximityKind kind, const Matrix& cross, const Matrix& core,
                                   const Matrix& core_pinv, IndexList landmarks, const CorrectionOptions& options);
/// Same pipeline reading the N x m landmark columns from a row oracle.
CorrectedModel fit_corrected_model(const ProximitySource& source, std::span<const Index> landmarks,
                                   const CorrectionOptions& options);

/// Standard O(N^3) route: dense double centering when needed, full
/// eigendecomposition, correction and reassembly U A* U^T.
Matrix dense_corrected_similarity(const ProximityMatrix& m, CorrectionMode mode);

}  // namespace nyprox
