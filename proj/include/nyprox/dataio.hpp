#pragma once

#include <nyprox/types.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace nyprox {

/// Dense symmetric N x N proximity matrix.
///
/// Invariants (checked by `validate` and by every loader): symmetric, finite;
/// a squared dissimilarity additionally has a zero diagonal and no negative entries.
struct ProximityMatrix {
  ProximityKind kind = ProximityKind::SquaredDissimilarity;
  Matrix values;
  /// Set by the loaders when the source was noticeably asymmetric and got symmetrized.
  bool asymmetry_warning = false;

  Index size() const { return values.rows(); }
  bool is_similarity() const { return kind == ProximityKind::Similarity; }
};

/// Class ids per sample, normalized to 0..C-1.
struct LabelVector {
  std::vector<int> labels;

  Index size() const { return static_cast<Index>(labels.size()); }
  int num_classes() const;
};

enum class MatrixFormat { Pmx, Csv };

/// Picks the format from the file extension (".csv" is CSV, everything else PMX).
MatrixFormat format_from_path(const std::filesystem::path& path);

/// Throws DataError naming the first coordinate that breaks the invariants.
void validate(const ProximityMatrix& m);

/// Symmetrizes `values` in place as (A + A^T)/2; returns true when the largest
/// asymmetry exceeded 1e-9 * max|value|.
bool symmetrize(Matrix& values);

/// PMX layout: "PMX1", u8 kind, u64 n (LE), n*n LE float64 row-major.
/// CSV carries no kind, so `kind` must be supplied for CSV input.
ProximityMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format,
                            std::optional<ProximityKind> kind = std::nullopt);
void write_matrix(const ProximityMatrix& m, const std::filesystem::path& path, MatrixFormat format);

/// Rectangular blocks (landmark cross blocks, out-of-sample queries and results).
/// PMB layout: "PMB1", u8 kind, u64 rows, u64 cols, rows*cols LE float64 row-major.
struct ProximityBlock {
  ProximityKind kind = ProximityKind::Similarity;
  Matrix values;
};

ProximityBlock read_block(const std::filesystem::path& path, MatrixFormat format,
                          std::optional<ProximityKind> kind = std::nullopt);
void write_block(const ProximityBlock& b, const std::filesystem::path& path, MatrixFormat format);

/// One integer per line.
LabelVector read_labels(const std::filesystem::path& path);
void write_labels(const LabelVector& labels, const std::filesystem::path& path);

/// Maps arbitrary integer ids onto 0..C-1 preserving their order.
LabelVector normalize_labels(const std::vector<long long>& raw);

struct BallConfig {
  Index n_per_class = 300;
  Index dim = 3;
  double radius_a = 0.35;
  double radius_b = 0.65;
  /// Side of the placement cube; <= 0 selects 20 * (radius_a + radius_b).
  double box = 0.0;
  std::uint64_t seed = 0;

  double effective_box() const;
};

/// Non-overlapping balls of two radii placed uniformly in a cube.
struct BallGeometry {
  Matrix centers;  ///< one row per ball
  Vector radii;
  LabelVector labels;

  Index size() const { return centers.rows(); }
  /// Squared surface distance (|c_i - c_j| - r_i - r_j)^2; zero on the diagonal.
  double squared_surface_distance(Index i, Index j) const;
};

/// Throws ConfigError after 10^6 rejected placements.
BallGeometry ball_geometry(const BallConfig& config);

struct BallDataset {
  ProximityMatrix dissimilarities;
  LabelVector labels;
};

BallDataset ball_dataset(const BallConfig& config);

}  // namespace nyprox
