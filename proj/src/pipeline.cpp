#include <nyprox/pipeline.hpp>

#include <nyprox/transforms.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace nyprox {

CorrectedModel fit_corrected_model(ProximityKind kind, const Matrix& cross, const Matrix& core, IndexList landmarks,
                                   const CorrectionOptions& options) {
  if (kind == ProximityKind::SquaredDissimilarity) {
    CenteredBlocks centered = nystrom_double_center(cross, core, options.tol.pinv);
    const NystromFactors f = make_factors(ProximityKind::Similarity, std::move(centered.cross),
                                          std::move(centered.core), std::move(landmarks), options.tol.pinv);
    CorrectedModel model = build_corrected_model(nystrom_eig_indefinite(f, options.tol), f, options,
                                                 std::move(centered.stats));
    model.source_kind = ProximityKind::SquaredDissimilarity;
    return model;
  }
  const NystromFactors f = make_factors(kind, cross, core, std::move(landmarks), options.tol.pinv);
  return build_corrected_model(nystrom_eig_indefinite(f, options.tol), f, options);
}

CorrectedModel fit_corrected_model(ProximityKind kind, const Matrix& cross, const Matrix& core,
                                   const Matrix& core_pinv, IndexList landmarks, const CorrectionOptions& options) {
  if (kind == ProximityKind::SquaredDissimilarity) {
    CenteredBlocks centered = nystrom_double_center(cross, core, core_pinv);
    const NystromFactors f = make_factors(ProximityKind::Similarity, std::move(centered.cross),
                                          std::move(centered.core), std::move(landmarks), options.tol.pinv);
    CorrectedModel model = build_corrected_model(nystrom_eig_indefinite(f, options.tol), f, options,
                                                 std::move(centered.stats));
    model.source_kind = ProximityKind::SquaredDissimilarity;
    return model;
  }
  const NystromFactors f = make_factors(kind, cross, core, core_pinv, std::move(landmarks));
  return build_corrected_model(nystrom_eig_indefinite(f, options.tol), f, options);
}

CorrectedModel fit_corrected_model(const ProximitySource& source, std::span<const Index> landmarks,
                                   const CorrectionOptions& options) {
  // Reads the landmark columns once; the raw core pseudo-inverse is only formed where needed.
  const Index n = source.size();
  if (landmarks.empty()) throw UsageError("fit_corrected_model: no landmarks");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index l : landmarks) {
    if (l < 0 || l >= n) throw UsageError("landmark index " + std::to_string(l) + " out of range");
    if (seen[static_cast<std::size_t>(l)]) throw UsageError("duplicate landmark index " + std::to_string(l));
    seen[static_cast<std::size_t>(l)] = true;
  }
  IndexList rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), Index{0});
  const Matrix cross = gather_block(source, rows, landmarks);
  Matrix core(cross.cols(), cross.cols());
  for (Index i = 0; i < core.rows(); ++i) core.row(i) = cross.row(landmarks[static_cast<std::size_t>(i)]);
  return fit_corrected_model(source.kind(), cross, core, IndexList(landmarks.begin(), landmarks.end()), options);
}

Matrix dense_corrected_similarity(const ProximityMatrix& m, CorrectionMode mode) {
  const Matrix s = m.is_similarity() ? m.values : double_center(m).values;
  const EigenPair e = sym_eig(s);
  const Vector corrected = correct_eigenvalues(e.values, mode);
  const Matrix out = e.vectors * corrected.asDiagonal() * e.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace nyprox
