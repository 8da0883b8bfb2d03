#include <nyprox/oos.hpp>

#include <string>

namespace nyprox {

namespace {

void check_columns(const CorrectedModel& model, const Matrix& block) {
  if (block.cols() != model.num_landmarks()) {
    throw UsageError("out-of-sample block has " + std::to_string(block.cols()) + " columns, model has " +
                     std::to_string(model.num_landmarks()) + " landmarks");
  }
  if (!block.allFinite()) throw DataError("out-of-sample block contains non-finite entries");
}

}  // namespace

Extension extend_similarities(const CorrectedModel& model, const Matrix& s_new, bool with_self) {
  check_columns(model, s_new);
  Extension out;
  const Matrix projected = s_new * model.w_star;
  out.to_training = projected * model.cross_ref.transpose();
  if (with_self) {
    const Matrix self = projected * s_new.transpose();
    out.self = 0.5 * (self + self.transpose());
  }
  return out;
}

Extension extend_dissimilarities(const CorrectedModel& model, const Matrix& d_new, bool with_self) {
  if (!model.stats) {
    throw UsageError("extend_dissimilarities: model was built from similarities and carries no centering statistics");
  }
  check_columns(model, d_new);
  return extend_similarities(model, center_rows(d_new, *model.stats), with_self);
}

Matrix extend_features(const CorrectedModel& model, const Matrix& s_new) {
  check_columns(model, s_new);
  if (!model.has_feature_map) throw UsageError("extend_features: model has no real feature map (use clip or flip)");
  return s_new * model.feature_factor;
}

Matrix landmark_similarities(const CorrectedModel& model, const Matrix& prox_new) {
  check_columns(model, prox_new);
  if (model.source_kind == ProximityKind::Similarity) return prox_new;
  if (!model.stats) throw UsageError("dissimilarity model without centering statistics");
  return center_rows(prox_new, *model.stats);
}

}  // namespace nyprox
