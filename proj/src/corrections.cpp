#include <nyprox/corrections.hpp>

#include "binio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nyprox {

const char* to_string(CorrectionMode mode) {
  switch (mode) {
    case CorrectionMode::None: return "none";
    case CorrectionMode::Clip: return "clip";
    case CorrectionMode::Flip: return "flip";
    case CorrectionMode::Shift: return "shift";
  }
  return "?";
}

CorrectionMode parse_correction_mode(std::string_view text) {
  if (text == "none") return CorrectionMode::None;
  if (text == "clip") return CorrectionMode::Clip;
  if (text == "flip") return CorrectionMode::Flip;
  if (text == "shift") return CorrectionMode::Shift;
  throw UsageError("unknown correction mode '" + std::string(text) + "' (expected clip, flip, shift or none)");
}

Vector correct_eigenvalues(const Vector& values, CorrectionMode mode) {
  switch (mode) {
    case CorrectionMode::None: return values;
    case CorrectionMode::Clip: return values.cwiseMax(0.0);
    case CorrectionMode::Flip: return values.cwiseAbs();
    case CorrectionMode::Shift: {
      if (values.size() == 0) return values;
      const double lmin = values.minCoeff();
      return lmin < 0.0 ? Vector((values.array() - lmin).matrix()) : values;
    }
  }
  throw UsageError("invalid correction mode");
}

namespace {

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

Matrix rows_of(const Matrix& m, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= m.rows()) throw UsageError("row index " + std::to_string(rows[r]) + " out of range");
    out.row(static_cast<Index>(r)) = m.row(rows[r]);
  }
  return out;
}

// Ratio of extreme singular values of a tall block; infinity when rank deficient.
double condition_number(const Matrix& m) {
  if (m.cols() == 0) return 1.0;
  const Vector sv2 = sym_eigenvalues(symmetrized(m.transpose() * m));
  const double hi = sv2(0);
  const double lo = sv2(sv2.size() - 1);
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(hi / lo);
}

bool is_psd_mode(CorrectionMode mode) { return mode == CorrectionMode::Clip || mode == CorrectionMode::Flip; }

}  // namespace

Matrix CorrectedModel::features() const {
  if (!has_feature_map) {
    throw UsageError(std::string("model with mode '") + to_string(mode) +
                     "' keeps negative directions and has no real feature map; use clip or flip");
  }
  return cross_ref * feature_factor;
}

CorrectedModel build_corrected_model(const EigenModel& eig, const NystromFactors& factors,
                                     const CorrectionOptions& options, std::optional<CenteringStats> stats) {
  if (eig.coeff.rows() != factors.num_landmarks() || eig.coeff.cols() != eig.A.size()) {
    throw UsageError("build_corrected_model: eigen model does not belong to these factors");
  }
  CorrectedModel model;
  model.source_kind = factors.kind;
  model.landmarks = factors.landmarks;
  model.cross_ref = factors.cross;
  model.mode = options.mode;
  model.stats = std::move(stats);

  const Vector corrected = correct_eigenvalues(eig.A, options.mode);
  // Landmark rows of C, expressed through the core: C_mm = S_mm T.
  const Matrix landmark_rows = factors.core * eig.coeff;
  if (options.rule == CoreRule::Pullback) {
    model.w_star = symmetrized(eig.coeff * corrected.asDiagonal() * eig.coeff.transpose());
  } else {
    // Only this rule inverts the landmark rows, so only here does their conditioning matter.
    const double cond = condition_number(landmark_rows);
    if (cond > 1e12) {
      model.warning = "landmark eigenvector block is ill-conditioned (condition estimate " + std::to_string(cond) +
                      "); corrected core formed by pseudo-inverse";
    }
    model.w_star = pinv_sym(symmetrized(landmark_rows * corrected.asDiagonal() * landmark_rows.transpose()),
                            options.tol.pinv);
  }

  const Index m = model.w_star.rows();
  if (options.rule == CoreRule::Pullback) {
    // W* = (T sqrt(A*)) (T sqrt(A*))^T whenever A* has no negative entry.
    const double amax = max_abs(corrected);
    model.has_feature_map = corrected.size() == 0 || corrected.minCoeff() >= -1e-10 * amax;
    std::vector<Index> kept;
    for (Index j = 0; j < corrected.size(); ++j)
      if (corrected(j) > options.tol.pinv * amax) kept.push_back(j);
    model.feature_factor = Matrix(m, model.has_feature_map ? static_cast<Index>(kept.size()) : 0);
    if (model.has_feature_map) {
      for (std::size_t j = 0; j < kept.size(); ++j)
        model.feature_factor.col(static_cast<Index>(j)) = eig.coeff.col(kept[j]) * std::sqrt(corrected(kept[j]));
    }
    return model;
  }
  const EigenPair w = sym_eig(model.w_star);
  const double wmax = max_abs(w.values);
  Index keep = 0;
  while (keep < w.values.size() && w.values(keep) > options.tol.pinv * wmax) ++keep;
  const bool negative_left = w.values.size() && w.values(w.values.size() - 1) < -1e-10 * wmax;
  model.has_feature_map = is_psd_mode(options.mode) || !negative_left;
  if (model.has_feature_map) {
    model.feature_factor = w.vectors.leftCols(keep) * w.values.head(keep).cwiseSqrt().asDiagonal();
  } else {
    model.feature_factor = Matrix(m, 0);
  }
  return model;
}

Matrix corrected_block(const CorrectedModel& model, std::span<const Index> rows, std::span<const Index> cols) {
  const Matrix left = rows_of(model.cross_ref, rows) * model.w_star;
  return left * rows_of(model.cross_ref, cols).transpose();
}

Matrix corrected_matrix(const CorrectedModel& model) {
  return symmetrized(model.cross_ref * model.w_star * model.cross_ref.transpose());
}

Matrix corrected_to_dissimilarity(const CorrectedModel& model, std::span<const Index> rows,
                                  std::span<const Index> cols) {
  const Matrix a = rows_of(model.cross_ref, rows);
  const Matrix b = rows_of(model.cross_ref, cols);
  const Matrix aw = a * model.w_star;
  const Vector diag_a = (aw.array() * a.array()).rowwise().sum();
  const Vector diag_b = ((b * model.w_star).array() * b.array()).rowwise().sum();
  const Matrix s = aw * b.transpose();

  Matrix d(s.rows(), s.cols());
  for (Index j = 0; j < d.cols(); ++j)
    for (Index i = 0; i < d.rows(); ++i) d(i, j) = diag_a(i) + diag_b(j) - 2.0 * s(i, j);
  const double scale = std::max({d.size() ? d.cwiseAbs().maxCoeff() : 0.0, max_abs(diag_a), max_abs(diag_b)});
  const double floor = -1e-9 * scale;
  for (Index j = 0; j < d.cols(); ++j) {
    for (Index i = 0; i < d.rows(); ++i) {
      double& v = d(i, j);
      if (rows[static_cast<std::size_t>(i)] == cols[static_cast<std::size_t>(j)]) {
        v = 0.0;
      } else if (v < 0.0) {
        if (v >= floor) {
          v = 0.0;
        } else if (is_psd_mode(model.mode)) {
          throw std::logic_error("corrected_to_dissimilarity: negative squared distance " + std::to_string(v) +
                                 " from a psd-corrected model");
        }
      }
    }
  }
  return d;
}

CorrectedDissimilarityOracle::CorrectedDissimilarityOracle(const CorrectedModel& model)
    : projected_(model.cross_ref * model.w_star), cross_(model.cross_ref), strict_(is_psd_mode(model.mode)) {
  diag_ = (projected_.array() * cross_.array()).rowwise().sum();
}

double CorrectedDissimilarityOracle::operator()(Index i, Index j) const {
  if (i == j) return 0.0;
  const double v = diag_(i) + diag_(j) - 2.0 * projected_.row(i).dot(cross_.row(j));
  if (v >= 0.0) return v;
  const double floor = -1e-9 * std::max(std::abs(diag_(i)), std::abs(diag_(j)));
  if (v >= floor) return 0.0;
  if (strict_) throw std::logic_error("corrected dissimilarity oracle: negative value from a psd-corrected model");
  return v;
}

// PCM1 layout: magic, provenance, u8 source kind, u8 mode, u64 N, u64 m, u64 k,
// landmarks, cross (N x m), W* (m x m), u8 feature flag, R (m x k),
// u8 stats flag [s, g, n, pinv(D_core) s], warning.
void save_model(const CorrectedModel& model, const std::filesystem::path& path, const std::string& provenance) {
  detail::BinaryWriter w(path);
  w.magic("PCM1");
  w.str(provenance);
  w.u8(static_cast<std::uint8_t>(model.source_kind));
  w.u8(static_cast<std::uint8_t>(model.mode));
  w.u64(static_cast<std::uint64_t>(model.rows()));
  w.u64(static_cast<std::uint64_t>(model.num_landmarks()));
  w.u64(static_cast<std::uint64_t>(model.feature_factor.cols()));
  for (Index l : model.landmarks) w.u64(static_cast<std::uint64_t>(l));
  w.matrix(model.cross_ref);
  w.matrix(model.w_star);
  w.u8(model.has_feature_map ? 1 : 0);
  w.matrix(model.feature_factor);
  w.u8(model.stats ? 1 : 0);
  if (model.stats) {
    w.vector(model.stats->s);
    w.f64(model.stats->g);
    w.u64(static_cast<std::uint64_t>(model.stats->n));
    w.vector(model.stats->core_pinv_s);
  }
  w.str(model.warning);
  w.finish();
}

CorrectedModel load_model(const std::filesystem::path& path, std::string* provenance) {
  detail::BinaryReader r(path);
  if (r.magic() != "PCM1") throw DataError("'" + path.string() + "' is not a corrected model (magic PCM1 expected)");
  std::string prov = r.str();
  if (provenance) *provenance = prov;
  CorrectedModel model;
  const auto kind = r.u8();
  if (kind > 1) throw DataError("corrected model: invalid source kind " + std::to_string(kind));
  model.source_kind = static_cast<ProximityKind>(kind);
  const auto mode = r.u8();
  if (mode > 3) throw DataError("corrected model: invalid mode " + std::to_string(mode));
  model.mode = static_cast<CorrectionMode>(mode);
  const auto n = r.u64();
  const auto m = r.u64();
  const auto k = r.u64();
  if (k > m) throw DataError("corrected model: feature rank exceeds landmark count");
  model.landmarks.resize(m);
  for (auto& l : model.landmarks) l = static_cast<Index>(r.u64());
  model.cross_ref = r.matrix(n, m);
  model.w_star = r.matrix(m, m);
  model.has_feature_map = r.u8() != 0;
  model.feature_factor = r.matrix(m, k);
  if (r.u8() != 0) {
    CenteringStats st;
    st.s = r.vector(m);
    st.g = r.f64();
    st.n = static_cast<Index>(r.u64());
    st.core_pinv_s = r.vector(m);
    if (st.n <= 0) throw DataError("corrected model: centering statistics with zero training count");
    model.stats = std::move(st);
  }
  model.warning = r.str();
  r.expect_end();
  return model;
}

// PNF1 layout: magic, provenance, u8 kind, u64 N, u64 m, landmarks, cross, core, core pinv.
void save_factors(const NystromFactors& f, const std::filesystem::path& path, const std::string& provenance) {
  detail::BinaryWriter w(path);
  w.magic("PNF1");
  w.str(provenance);
  w.u8(static_cast<std::uint8_t>(f.kind));
  w.u64(static_cast<std::uint64_t>(f.rows()));
  w.u64(static_cast<std::uint64_t>(f.num_landmarks()));
  for (Index l : f.landmarks) w.u64(static_cast<std::uint64_t>(l));
  w.matrix(f.cross);
  w.matrix(f.core);
  w.matrix(f.core_pinv);
  w.finish();
}

NystromFactors load_factors(const std::filesystem::path& path, std::string* provenance) {
  detail::BinaryReader r(path);
  if (r.magic() != "PNF1") throw DataError("'" + path.string() + "' is not a Nystrom factor file (magic PNF1 expected)");
  std::string prov = r.str();
  if (provenance) *provenance = prov;
  NystromFactors f;
  const auto kind = r.u8();
  if (kind > 1) throw DataError("factor file: invalid kind " + std::to_string(kind));
  f.kind = static_cast<ProximityKind>(kind);
  const auto n = r.u64();
  const auto m = r.u64();
  f.landmarks.resize(m);
  for (auto& l : f.landmarks) l = static_cast<Index>(r.u64());
  f.cross = r.matrix(n, m);
  f.core = r.matrix(m, m);
  f.core_pinv = r.matrix(m, m);
  r.expect_end();
  return f;
}

}  // namespace nyprox
