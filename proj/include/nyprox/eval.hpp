#pragma once

#include <nyprox/corrections.hpp>
#include <nyprox/dataio.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nyprox {

/// Tie-aware (average rank) Spearman correlation. Empty when either list is
/// constant; throws UsageError for unequal lengths or fewer than two values.
std::optional<double> spearman_rho(std::span<const double> a, std::span<const double> b);

using PairOracle = std::function<double(Index, Index)>;

/// Rank agreement of two dissimilarity pipelines over pairs i < j. `pairs`
/// unset means min(200000, N(N-1)/2) with full enumeration for N <= 700;
/// otherwise that many pairs are drawn uniformly (with replacement).
std::optional<double> proximity_fidelity(Index n, const PairOracle& exact, const PairOracle& approx,
                                         std::optional<std::size_t> pairs, std::uint64_t seed);

/// One-vs-rest regularized least squares: (F^T F + lambda I) w_c = F^T y_c, y_c in {-1,+1}.
struct RidgeClassifier {
  Matrix weights;  ///< k x C
  double lambda = 0.0;

  int num_classes() const { return static_cast<int>(weights.cols()); }
  std::vector<int> predict(const Matrix& features) const;
};

/// 1e-3 * trace(F^T F) / k.
double default_ridge_lambda(const Matrix& features);

RidgeClassifier fit_ridge_classifier(const Matrix& features, std::span<const int> labels,
                                     std::optional<double> lambda = std::nullopt);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

enum class Representation : std::uint8_t { Nystrom, Lmds, DissimilaritySpace };

const char* to_string(Representation r);
Representation parse_representation(std::string_view text);

struct CvConfig {
  Index m = 0;  ///< landmarks; 0 means all samples
  CorrectionMode mode = CorrectionMode::Flip;
  Representation representation = Representation::Nystrom;
  std::optional<double> lambda;
  int folds = 10;
  int repeats = 10;
  std::uint64_t seed = 0;
  CoreRule rule = CoreRule::Pullback;
  Tolerances tol;
};

struct CvReport {
  CvConfig config;
  std::vector<double> fold_accuracies;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Stratified k-fold cross-validation. Landmarks are drawn once per repeat from
/// all samples; each fold fits the corrected model and the classifier on its
/// training rows and reaches the test rows through the out-of-sample extension.
CvReport crossvalidate(const ProximityMatrix& data, const LabelVector& labels, const CvConfig& config);

/// Stratified fold id per sample; throws DataError when a class has fewer than two samples.
std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed);

struct ConvergencePoint {
  Index m = 0;
  double max_error = 0.0;
};

/// Nystrom approximation of a kernel's Gram matrix on the grid x_i = (i + 1/2)/n.
/// Landmark sets are nested prefixes of one seeded permutation.
std::vector<ConvergencePoint> convergence_probe(const std::function<double(double, double)>& kernel,
                                                Index grid_n, std::span<const Index> m_list,
                                                std::uint64_t seed);

struct StageTime {
  std::string stage;
  double seconds = 0.0;
};

struct BenchRecord {
  Index n = 0;
  Index m = 0;
  std::string pipeline;  ///< "proposed" or "standard"
  std::vector<StageTime> stages;
  double total_seconds = 0.0;
  bool skipped = false;
  std::uint64_t entries_touched = 0;
};

struct BenchConfig {
  std::vector<Index> n_list;
  Index m = 500;
  CorrectionMode mode = CorrectionMode::Flip;
  Index standard_cap = 8000;
  bool run_standard = true;
  std::uint64_t seed = 0;
};

using SourceFactory = std::function<std::shared_ptr<const ProximitySource>(Index n)>;

/// Times the proposed and the standard pipeline for every n.
std::vector<BenchRecord> benchmark_scaling(const SourceFactory& make_source, const BenchConfig& config);

/// Ball data with a cube scaled to keep the sample density of the default 600-ball set.
SourceFactory ball_source_factory(BallConfig base);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace nyprox
