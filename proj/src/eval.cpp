#include <nyprox/eval.hpp>

#include <nyprox/baselines.hpp>
#include <nyprox/oos.hpp>
#include <nyprox/pipeline.hpp>
#include <nyprox/transforms.hpp>

#include "rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nyprox {

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && v[order[j]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

Matrix gather(const Matrix& m, std::span<const Index> rows, std::span<const Index> cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r)
      out(static_cast<Index>(r), static_cast<Index>(c)) = m(rows[r], cols[c]);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::optional<double> spearman_rho(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw UsageError("spearman_rho: lists differ in length");
  if (a.size() < 2) throw UsageError("spearman_rho: need at least two values");
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double x = ra[i] - mean;
    const double y = rb[i] - mean;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  if (saa == 0.0 || sbb == 0.0) return std::nullopt;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::optional<double> proximity_fidelity(Index n, const PairOracle& exact, const PairOracle& approx,
                                         std::optional<std::size_t> pairs, std::uint64_t seed) {
  if (n < 2) throw UsageError("proximity_fidelity: need at least two samples");
  const auto total = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<double> ex, ap;
  if (!pairs && n <= 700) {
    ex.reserve(total);
    ap.reserve(total);
    for (Index j = 1; j < n; ++j)
      for (Index i = 0; i < j; ++i) {
        ex.push_back(exact(i, j));
        ap.push_back(approx(i, j));
      }
  } else {
    const std::size_t count = pairs ? *pairs : std::min<std::size_t>(200000, total);
    if (count < 2) throw UsageError("proximity_fidelity: need at least two pairs");
    detail::Rng rng(seed);
    ex.reserve(count);
    ap.reserve(count);
    const auto un = static_cast<std::uint64_t>(n);
    for (std::size_t p = 0; p < count; ++p) {
      Index i = static_cast<Index>(rng.below(un));
      Index j = static_cast<Index>(rng.below(un - 1));
      if (j >= i) ++j;
      if (i > j) std::swap(i, j);
      ex.push_back(exact(i, j));
      ap.push_back(approx(i, j));
    }
  }
  return spearman_rho(ex, ap);
}

std::vector<int> RidgeClassifier::predict(const Matrix& features) const {
  if (features.cols() != weights.rows()) {
    throw UsageError("ridge predict: feature dimension " + std::to_string(features.cols()) + " differs from " +
                     std::to_string(weights.rows()));
  }
  const Matrix scores = features * weights;
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  for (Index i = 0; i < scores.rows(); ++i) {
    Index best = 0;
    scores.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

double default_ridge_lambda(const Matrix& features) {
  if (features.cols() == 0) throw UsageError("ridge classifier needs at least one feature");
  const double trace = features.squaredNorm();
  const double lambda = 1e-3 * trace / static_cast<double>(features.cols());
  return lambda > 0.0 ? lambda : 1e-3;
}

RidgeClassifier fit_ridge_classifier(const Matrix& features, std::span<const int> labels,
                                     std::optional<double> lambda) {
  const Index k = features.cols();
  if (k == 0) throw UsageError("ridge classifier: empty feature map (uncorrected indefinite model?); use clip or flip");
  if (static_cast<Index>(labels.size()) != features.rows()) throw UsageError("ridge classifier: label count mismatch");
  if (labels.empty()) throw UsageError("ridge classifier: no training samples");
  const double lam = lambda ? *lambda : default_ridge_lambda(features);
  if (!(lam > 0.0)) throw UsageError("ridge classifier: lambda must be positive");
  const int classes = *std::max_element(labels.begin(), labels.end()) + 1;
  if (*std::min_element(labels.begin(), labels.end()) < 0) throw UsageError("ridge classifier: negative label");

  Matrix targets = Matrix::Constant(features.rows(), classes, -1.0);
  for (std::size_t i = 0; i < labels.size(); ++i) targets(static_cast<Index>(i), labels[i]) = 1.0;
  Matrix normal = features.transpose() * features;
  normal.diagonal().array() += lam;
  RidgeClassifier clf;
  clf.lambda = lam;
  clf.weights = normal.ldlt().solve(features.transpose() * targets);
  return clf;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw UsageError("accuracy: length mismatch");
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

const char* to_string(Representation r) {
  switch (r) {
    case Representation::Nystrom: return "nystrom";
    case Representation::Lmds: return "lmds";
    case Representation::DissimilaritySpace: return "dspace";
  }
  return "?";
}

Representation parse_representation(std::string_view text) {
  if (text == "nystrom") return Representation::Nystrom;
  if (text == "lmds") return Representation::Lmds;
  if (text == "dspace") return Representation::DissimilaritySpace;
  throw UsageError("unknown representation '" + std::string(text) + "' (expected nystrom, lmds or dspace)");
}

std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed) {
  if (folds < 2) throw UsageError("cross-validation needs at least two folds");
  if (labels.size() < static_cast<std::size_t>(folds)) throw DataError("fewer samples than folds");
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
  for (const auto& [label, idx] : members) {
    if (idx.size() < 2) {
      throw DataError("class " + std::to_string(label) + " has " + std::to_string(idx.size()) +
                      " sample; stratified folds need at least two per class");
    }
  }
  detail::Rng rng(seed);
  std::vector<int> fold(labels.size(), 0);
  int next = 0;
  for (auto& [label, idx] : members) {
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
    for (std::size_t i : idx) {
      fold[i] = next;
      next = (next + 1) % folds;
    }
  }
  return fold;
}

CvReport crossvalidate(const ProximityMatrix& data, const LabelVector& labels, const CvConfig& config) {
  const Index n = data.size();
  if (labels.size() != n) throw DataError("label count " + std::to_string(labels.size()) + " differs from matrix size " +
                                          std::to_string(n));
  if (config.repeats < 1) throw UsageError("cross-validation needs at least one repeat");
  const Index m = config.m == 0 ? n : config.m;
  if (m < 1 || m > n) throw UsageError("landmark count must lie in 1..N");

  // Dissimilarity view used by the L-MDS baseline.
  std::optional<ProximityMatrix> dis;
  if (config.representation == Representation::Lmds && data.is_similarity()) dis = sim_to_dis(data);
  const Matrix& lmds_source = dis ? dis->values : data.values;

  CorrectionOptions options;
  options.mode = config.mode;
  options.rule = config.rule;
  options.tol = config.tol;

  CvReport report;
  report.config = config;
  report.fold_accuracies.assign(static_cast<std::size_t>(config.folds) * static_cast<std::size_t>(config.repeats), 0.0);

  detail::Rng master(config.seed);
  for (int rep = 0; rep < config.repeats; ++rep) {
    const std::uint64_t fold_seed = master.next();
    const std::uint64_t landmark_seed = master.next();
    const std::vector<int> fold = stratified_folds(labels.labels, config.folds, fold_seed);
    const IndexList landmarks = select_landmarks(n, m, landmark_seed);
    const Matrix core = gather(data.values, landmarks, landmarks);
    const Matrix core_pinv =
        config.representation == Representation::Nystrom ? pinv_sym(0.5 * (core + core.transpose()), config.tol.pinv)
                                                         : Matrix();

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (int f = 0; f < config.folds; ++f) {
      try {
        IndexList train, test;
        std::vector<int> y_train, y_test;
        for (Index i = 0; i < n; ++i) {
          const int label = labels.labels[static_cast<std::size_t>(i)];
          if (fold[static_cast<std::size_t>(i)] == f) {
            test.push_back(i);
            y_test.push_back(label);
          } else {
            train.push_back(i);
            y_train.push_back(label);
          }
        }
        Matrix f_train, f_test;
        switch (config.representation) {
          case Representation::Nystrom: {
            const CorrectedModel model =
                fit_corrected_model(data.kind, gather(data.values, train, landmarks), core, core_pinv, landmarks, options);
            f_train = model.features();
            f_test = extend_features(model, landmark_similarities(model, gather(data.values, test, landmarks)));
            break;
          }
          case Representation::Lmds: {
            const LmdsEmbedding e = lmds_fit(gather(lmds_source, landmarks, landmarks));
            f_train = lmds_project(e, gather(lmds_source, train, landmarks));
            f_test = lmds_project(e, gather(lmds_source, test, landmarks));
            break;
          }
          case Representation::DissimilaritySpace:
            f_train = dissimilarity_space(gather(data.values, train, landmarks));
            f_test = dissimilarity_space(gather(data.values, test, landmarks));
            break;
        }
        const RidgeClassifier clf = fit_ridge_classifier(f_train, y_train, config.lambda);
        report.fold_accuracies[static_cast<std::size_t>(rep * config.folds + f)] = accuracy(clf.predict(f_test), y_test);
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  const auto& acc = report.fold_accuracies;
  const double count = static_cast<double>(acc.size());
  report.mean = std::accumulate(acc.begin(), acc.end(), 0.0) / count;
  double ss = 0.0;
  for (double a : acc) ss += (a - report.mean) * (a - report.mean);
  report.stddev = acc.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
  return report;
}

std::vector<ConvergencePoint> convergence_probe(const std::function<double(double, double)>& kernel, Index grid_n,
                                                std::span<const Index> m_list, std::uint64_t seed) {
  if (grid_n < 1) throw UsageError("convergence_probe: empty grid");
  for (std::size_t i = 0; i < m_list.size(); ++i) {
    if (m_list[i] < 1 || m_list[i] > grid_n) throw UsageError("convergence_probe: landmark count outside 1..grid_n");
    if (i && m_list[i] < m_list[i - 1]) throw UsageError("convergence_probe: landmark counts must be ascending");
  }
  Matrix k(grid_n, grid_n);
  const double step = 1.0 / static_cast<double>(grid_n);
  for (Index j = 0; j < grid_n; ++j)
    for (Index i = 0; i < grid_n; ++i)
      k(i, j) = kernel((static_cast<double>(i) + 0.5) * step, (static_cast<double>(j) + 0.5) * step);
  k = (0.5 * (k + k.transpose())).eval();

  const IndexList order = select_landmarks(grid_n, grid_n, seed);
  IndexList all(static_cast<std::size_t>(grid_n));
  std::iota(all.begin(), all.end(), Index{0});
  std::vector<ConvergencePoint> out;
  for (Index m : m_list) {
    IndexList landmarks(order.begin(), order.begin() + m);
    const NystromFactors f =
        make_factors(ProximityKind::Similarity, gather(k, all, landmarks), gather(k, landmarks, landmarks), landmarks);
    out.push_back({m, (reconstruct(f) - k).cwiseAbs().maxCoeff()});
  }
  return out;
}

std::vector<BenchRecord> benchmark_scaling(const SourceFactory& make_source, const BenchConfig& config) {
  for (std::size_t i = 1; i < config.n_list.size(); ++i)
    if (config.n_list[i] < config.n_list[i - 1]) throw UsageError("bench: sizes must be ascending");
  CorrectionOptions options;
  options.mode = config.mode;
  std::vector<BenchRecord> records;
  for (Index n : config.n_list) {
    if (n < config.m) throw UsageError("bench: n=" + std::to_string(n) + " is below the landmark count");
    const std::shared_ptr<const ProximitySource> source = make_source(n);
    if (!source || source->size() != n) throw UsageError("bench: source factory returned a wrong-sized source");

    BenchRecord prop;
    prop.n = n;
    prop.m = config.m;
    prop.pipeline = "proposed";
    {
      CountingSource counted(*source);
      const auto start = std::chrono::steady_clock::now();
      auto t = start;
      auto stage = [&](const char* name) {
        prop.stages.push_back({name, seconds_since(t)});
        t = std::chrono::steady_clock::now();
      };
      const IndexList landmarks = select_landmarks(n, config.m, config.seed);
      IndexList all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), Index{0});
      Matrix cross = gather_block(counted, all, landmarks);
      Matrix core = gather(cross, landmarks, [&] {
        IndexList cols(static_cast<std::size_t>(config.m));
        std::iota(cols.begin(), cols.end(), Index{0});
        return cols;
      }());
      stage("factors");
      std::optional<CenteringStats> stats;
      if (counted.kind() == ProximityKind::SquaredDissimilarity) {
        CenteredBlocks centered = nystrom_double_center(cross, core, options.tol.pinv);
        cross = std::move(centered.cross);
        core = std::move(centered.core);
        stats = std::move(centered.stats);
      }
      stage("center");
      const NystromFactors f =
          make_factors(ProximityKind::Similarity, std::move(cross), std::move(core), landmarks, options.tol.pinv);
      const EigenModel eig = nystrom_eig_indefinite(f, options.tol);
      stage("eigen");
      const CorrectedModel model = build_corrected_model(eig, f, options, std::move(stats));
      stage("correct");
      prop.total_seconds = seconds_since(start);
      prop.entries_touched = counted.entries();
    }
    records.push_back(std::move(prop));

    BenchRecord standard;
    standard.n = n;
    standard.m = config.m;
    standard.pipeline = "standard";
    if (!config.run_standard || n > config.standard_cap) {
      standard.skipped = true;
    } else {
      const auto start = std::chrono::steady_clock::now();
      auto t = start;
      auto stage = [&](const char* name) {
        standard.stages.push_back({name, seconds_since(t)});
        t = std::chrono::steady_clock::now();
      };
      ProximityMatrix full = materialize(*source);
      standard.entries_touched = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
      stage("load");
      if (!full.is_similarity()) full = double_center(full);
      stage("center");
      const EigenPair e = sym_eig(full.values);
      stage("eigen");
      const Vector corrected = correct_eigenvalues(e.values, config.mode);
      const Matrix s_star = e.vectors * corrected.asDiagonal() * e.vectors.transpose();
      stage("correct");
      standard.total_seconds = seconds_since(start);
      (void)s_star;
    }
    records.push_back(std::move(standard));
  }
  return records;
}

SourceFactory ball_source_factory(BallConfig base) {
  return [base](Index n) -> std::shared_ptr<const ProximitySource> {
    if (n < 2 || n % 2 != 0) throw UsageError("ball benchmark sizes must be even, got " + std::to_string(n));
    BallConfig c = base;
    const double reference = static_cast<double>(2 * base.n_per_class);
    c.n_per_class = n / 2;
    c.box = base.effective_box() * std::cbrt(static_cast<double>(n) / reference);
    return std::make_shared<BallSource>(std::make_shared<const BallGeometry>(ball_geometry(c)));
  };
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw UsageError("loglog_slope: need two or more paired values");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw UsageError("loglog_slope: values must be positive");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw UsageError("loglog_slope: x values are all equal");
  return sxy / sxx;
}

}  // namespace nyprox
