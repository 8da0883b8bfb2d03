#pragma once

#include <nyprox/nystrom.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace nyprox {

enum class CorrectionMode : std::uint8_t { None = 0, Clip = 1, Flip = 2, Shift = 3 };

const char* to_string(CorrectionMode mode);
CorrectionMode parse_correction_mode(std::string_view text);

/// flip: |l|; clip: max(l, 0); shift: l + |l_min| when l_min < 0; none: identity.
Vector correct_eigenvalues(const Vector& values, CorrectionMode mode);

/// How the corrected landmark core is formed.
enum class CoreRule : std::uint8_t {
  /// W* = T A* T^T with C = S_{N,m} T; reproduces C A* C^T for every mode.
  Pullback = 0,
  /// W* = pinv(C_mm A* C_mm^T) with C_mm the (virtual) landmark rows of C.
  /// Agrees with Pullback for flip and none; mixes directions for clip and shift.
  LandmarkInverse = 1,
};

struct CorrectionOptions {
  CorrectionMode mode = CorrectionMode::Flip;
  CoreRule rule = CoreRule::Pullback;
  Tolerances tol;
};

/// Corrected low-rank similarity S^* = S_{N,m} W* S_{N,m}^T with its
/// out-of-sample data.
struct CorrectedModel {
  ProximityKind source_kind = ProximityKind::Similarity;
  IndexList landmarks;
  Matrix cross_ref;  ///< uncorrected S_{N,m}
  Matrix w_star;     ///< m x m corrected core
  CorrectionMode mode = CorrectionMode::None;
  std::optional<CenteringStats> stats;  ///< present for dissimilarity-born models
  /// m x k factor with R R^T = W*; empty (has_feature_map false) when W* keeps
  /// negative directions.
  Matrix feature_factor;
  bool has_feature_map = false;
  /// Set when the landmark eigenvector block is badly conditioned.
  std::string warning;

  Index rows() const { return cross_ref.rows(); }
  Index num_landmarks() const { return w_star.rows(); }
  /// F = S_{N,m} R, the explicit feature map of the training rows.
  Matrix features() const;
};

/// Builds the corrected model from a Nystrom eigendecomposition of `cross`.
CorrectedModel build_corrected_model(const EigenModel& eig, const NystromFactors& factors,
                                     const CorrectionOptions& options,
                                     std::optional<CenteringStats> stats = std::nullopt);

/// S^*_{rows, cols}, O(|rows| * |cols| * m).
Matrix corrected_block(const CorrectedModel& model, std::span<const Index> rows, std::span<const Index> cols);

/// Full corrected similarity for small N.
Matrix corrected_matrix(const CorrectedModel& model);

/// D*_ij = S*_ii + S*_jj - 2 S*_ij with round-off clamping at -1e-9 * max.
/// For clip/flip models a structurally negative value is an internal
/// inconsistency and throws std::logic_error.
Matrix corrected_to_dissimilarity(const CorrectedModel& model, std::span<const Index> rows,
                                  std::span<const Index> cols);

/// Pairwise corrected dissimilarities evaluated in O(m) per pair after an O(N m^2) setup.
class CorrectedDissimilarityOracle {
public:
  explicit CorrectedDissimilarityOracle(const CorrectedModel& model);
  double operator()(Index i, Index j) const;

private:
  Matrix projected_;  ///< S_{N,m} W*
  Matrix cross_;
  Vector diag_;
  bool strict_ = false;
};

/// Serialized container "PCM1" (little endian): landmarks, cross block, W*, R,
/// centering statistics, mode and an embedded provenance string.
void save_model(const CorrectedModel& model, const std::filesystem::path& path, const std::string& provenance = {});
CorrectedModel load_model(const std::filesystem::path& path, std::string* provenance = nullptr);

/// Nystrom factors container "PNF1": kind, landmarks, cross, core, core pseudo-inverse.
void save_factors(const NystromFactors& f, const std::filesystem::path& path, const std::string& provenance = {});
NystromFactors load_factors(const std::filesystem::path& path, std::string* provenance = nullptr);

}  // namespace nyprox
