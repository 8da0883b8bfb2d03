#include <nyprox/cli.hpp>

#include <nyprox/baselines.hpp>
#include <nyprox/dataio.hpp>
#include <nyprox/eval.hpp>
#include <nyprox/oos.hpp>
#include <nyprox/pipeline.hpp>
#include <nyprox/transforms.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nyprox::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;

ProximityKind parse_kind(const std::string& text) {
  if (text == "sim") return ProximityKind::Similarity;
  if (text == "dis") return ProximityKind::SquaredDissimilarity;
  throw UsageError("unknown kind '" + text + "' (expected sim or dis)");
}

std::vector<Index> parse_index_list(const std::string& text, const char* flag) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Index>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not an integer");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " needs at least one value");
  return out;
}

/// Everything a command reads from the command line.
struct Options {
  std::string in;
  std::string kind;
  Index m = 0;
  std::uint64_t seed = 0;
  std::string mode = "flip";
  double tol = Tolerances{}.pinv;
  double rank_tol = Tolerances{}.rank;
  std::string core_rule = "pullback";
  std::string out;
  int threads = 0;

  std::string to;
  std::string model;
  std::string self_out;
  std::string labels;
  std::string representation = "nystrom";
  std::optional<double> lambda;
  int folds = 10;
  int repeats = 10;
  std::optional<Index> dim;
  std::string m_list = "10,50,100,300,600";
  std::optional<std::size_t> pairs;
  std::string kernel = "min";
  Index grid = 200;
  std::string n_list = "1000,2000,4000,8000";
  Index standard_cap = 8000;
  bool no_standard = false;
  std::string format = "table";

  Index n_per_class = 300;
  Index ball_dim = 3;
  double radius_a = BallConfig{}.radius_a;
  double radius_b = BallConfig{}.radius_b;
  double box = 0.0;
};

json config_json(const std::string& command, const Options& o) {
  json c;
  c["command"] = command;
  c["in"] = o.in;
  c["kind"] = o.kind;
  c["m"] = o.m;
  c["seed"] = o.seed;
  c["mode"] = o.mode;
  c["tol"] = o.tol;
  c["rank_tol"] = o.rank_tol;
  c["core_rule"] = o.core_rule;
  c["out"] = o.out;
  return c;
}

json envelope(const std::string& command, const Options& o) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_json(command, o);
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write '" + path.string() + "'");
  f << j.dump(2) << '\n';
}

/// PMX/PMB/CSV outputs carry their provenance in "<out>.json".
void write_sidecar(const fs::path& out, const json& j) { write_json(fs::path(out.string() + ".json"), j); }

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
}

std::optional<ProximityKind> optional_kind(const Options& o) {
  if (o.kind.empty()) return std::nullopt;
  return parse_kind(o.kind);
}

ProximityMatrix load_input(const Options& o) {
  require(o.in, "--in");
  ProximityMatrix m = read_matrix(o.in, format_from_path(o.in), optional_kind(o));
  return m;
}

CorrectionOptions correction_options(const Options& o) {
  CorrectionOptions c;
  c.mode = parse_correction_mode(o.mode);
  if (o.core_rule == "pullback") {
    c.rule = CoreRule::Pullback;
  } else if (o.core_rule == "landmark-inverse") {
    c.rule = CoreRule::LandmarkInverse;
  } else {
    throw UsageError("unknown --core-rule '" + o.core_rule + "' (expected pullback or landmark-inverse)");
  }
  if (!(o.tol > 0.0) || !(o.rank_tol > 0.0)) throw UsageError("tolerances must be positive");
  c.tol.pinv = o.tol;
  c.tol.rank = o.rank_tol;
  return c;
}

Index landmark_count(Index requested, Index n) {
  const Index m = requested == 0 ? n : requested;
  if (m < 1 || m > n) throw UsageError("--m must lie in 1.." + std::to_string(n) + " (0 selects all samples)");
  return m;
}

Matrix gather(const Matrix& a, std::span<const Index> rows, std::span<const Index> cols) {
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows.size(); ++r)
      out(static_cast<Index>(r), static_cast<Index>(c)) = a(rows[r], cols[c]);
  return out;
}

IndexList all_indices(Index n) {
  IndexList all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), Index{0});
  return all;
}

void cmd_convert(const Options& o, std::ostream& out) {
  require(o.out, "--out");
  require(o.to, "--to");
  const ProximityMatrix in = load_input(o);
  const ProximityKind target = parse_kind(o.to);
  ProximityMatrix result;
  if (target == in.kind) {
    result = in;
  } else if (target == ProximityKind::Similarity) {
    result = double_center(in);
  } else {
    result = sim_to_dis(in);
  }
  write_matrix(result, o.out, format_from_path(o.out));
  json j = envelope("convert", o);
  j["config"]["to"] = o.to;
  write_sidecar(o.out, j);
  out << "wrote " << to_string(result.kind) << " matrix (" << result.size() << " x " << result.size() << ") to "
      << o.out << '\n';
}

void cmd_approximate(const Options& o, std::ostream& out) {
  require(o.out, "--out");
  const ProximityMatrix in = load_input(o);
  const Index m = landmark_count(o.m, in.size());
  const IndexList landmarks = select_landmarks(in.size(), m, o.seed);
  const NystromFactors f = nystrom_factors(DenseSource(in), landmarks, o.tol);
  save_factors(f, o.out, envelope("approximate", o).dump());
  out << "wrote Nystrom factors (N=" << f.rows() << ", m=" << f.num_landmarks() << ") to " << o.out << '\n';
}

void cmd_correct(const Options& o, std::ostream& out) {
  require(o.out, "--out");
  const ProximityMatrix in = load_input(o);
  const Index m = landmark_count(o.m, in.size());
  const IndexList landmarks = select_landmarks(in.size(), m, o.seed);
  const CorrectedModel model = fit_corrected_model(DenseSource(in), landmarks, correction_options(o));
  save_model(model, o.out, envelope("correct", o).dump());
  json j = envelope("correct", o);
  j["rows"] = model.rows();
  j["landmarks"] = model.num_landmarks();
  j["feature_rank"] = model.feature_factor.cols();
  j["has_feature_map"] = model.has_feature_map;
  j["warning"] = model.warning;
  out << j.dump(2) << '\n';
}

void cmd_extend(const Options& o, std::ostream& out) {
  require(o.model, "--model");
  require(o.out, "--out");
  require(o.in, "--in");
  const CorrectedModel model = load_model(o.model);
  const ProximityBlock q = read_block(o.in, format_from_path(o.in), optional_kind(o));
  if (q.kind != model.source_kind) {
    throw KindError("query block holds " + std::string(to_string(q.kind)) + " values but the model was built from " +
                    to_string(model.source_kind) + " data");
  }
  const bool with_self = !o.self_out.empty();
  const Extension ext = model.source_kind == ProximityKind::SquaredDissimilarity
                            ? extend_dissimilarities(model, q.values, with_self)
                            : extend_similarities(model, q.values, with_self);
  json j = envelope("extend", o);
  j["config"]["model"] = o.model;
  write_block({ProximityKind::Similarity, ext.to_training}, o.out, format_from_path(o.out));
  write_sidecar(o.out, j);
  if (ext.self) {
    write_block({ProximityKind::Similarity, *ext.self}, o.self_out, format_from_path(o.self_out));
    write_sidecar(o.self_out, j);
  }
  out << "wrote corrected block (" << ext.to_training.rows() << " x " << ext.to_training.cols() << ") to " << o.out
      << '\n';
}

void cmd_baseline(const std::string& which, const Options& o, std::ostream& out) {
  require(o.out, "--out");
  ProximityMatrix in = load_input(o);
  if (in.is_similarity()) in = sim_to_dis(in);
  const Index m = landmark_count(o.m, in.size());
  const IndexList landmarks = select_landmarks(in.size(), m, o.seed);
  const IndexList all = all_indices(in.size());
  const Matrix cross = gather(in.values, all, landmarks);
  Matrix result;
  if (which == "lmds") {
    const LmdsEmbedding e = lmds_fit(gather(in.values, landmarks, landmarks), o.dim);
    result = lmds_project(e, cross);
  } else {
    result = dissimilarity_space(cross);
  }
  write_block({which == "lmds" ? ProximityKind::Similarity : ProximityKind::SquaredDissimilarity, result}, o.out,
              format_from_path(o.out));
  json j = envelope("baseline " + which, o);
  j["landmarks"] = landmarks;
  write_sidecar(o.out, j);
  out << "wrote " << which << " features (" << result.rows() << " x " << result.cols() << ") to " << o.out << '\n';
}

void emit(const json& j, const Options& o, std::ostream& out, const std::function<void()>& table,
          const std::function<void()>& csv) {
  if (o.format == "json") {
    out << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    csv();
  } else if (o.format == "table") {
    table();
  } else {
    throw UsageError("unknown --format '" + o.format + "' (expected table, csv or json)");
  }
  if (!o.out.empty()) write_json(o.out, j);
}

void cmd_eval_cv(const Options& o, std::ostream& out) {
  require(o.labels, "--labels");
  const ProximityMatrix data = load_input(o);
  const LabelVector labels = read_labels(o.labels);
  CvConfig c;
  c.m = o.m;
  const CorrectionOptions co = correction_options(o);
  c.mode = co.mode;
  c.rule = co.rule;
  c.tol = co.tol;
  c.representation = parse_representation(o.representation);
  c.lambda = o.lambda;
  c.folds = o.folds;
  c.repeats = o.repeats;
  c.seed = o.seed;
  const CvReport r = crossvalidate(data, labels, c);

  json j = envelope("eval cv", o);
  j["config"]["labels"] = o.labels;
  j["config"]["representation"] = o.representation;
  j["config"]["folds"] = o.folds;
  j["config"]["repeats"] = o.repeats;
  if (o.lambda) j["config"]["lambda"] = *o.lambda;
  j["fold_accuracies"] = r.fold_accuracies;
  j["mean"] = r.mean;
  j["stddev"] = r.stddev;
  emit(
      j, o, out,
      [&] {
        out << "representation  mode   m     folds x repeats  mean     stddev\n";
        out << std::left << std::setw(16) << o.representation << std::setw(7) << o.mode << std::setw(6)
            << (o.m == 0 ? data.size() : o.m) << std::setw(17)
            << (std::to_string(o.folds) + " x " + std::to_string(o.repeats)) << std::fixed << std::setprecision(4)
            << std::setw(9) << r.mean << r.stddev << '\n';
      },
      [&] {
        out << "repeat,fold,accuracy\n";
        for (std::size_t i = 0; i < r.fold_accuracies.size(); ++i)
          out << i / static_cast<std::size_t>(o.folds) << ',' << i % static_cast<std::size_t>(o.folds) << ','
              << r.fold_accuracies[i] << '\n';
      });
}

void cmd_eval_fidelity(const Options& o, std::ostream& out) {
  const ProximityMatrix data = load_input(o);
  const Index n = data.size();
  const CorrectionOptions co = correction_options(o);
  const Matrix exact = dense_corrected_similarity(data, co.mode);
  const PairOracle exact_d = [&](Index i, Index j) { return exact(i, i) + exact(j, j) - 2.0 * exact(i, j); };
  json rows = json::array();
  for (Index m : parse_index_list(o.m_list, "--m-list")) {
    const IndexList landmarks = select_landmarks(n, landmark_count(m, n), o.seed);
    const CorrectedModel model = fit_corrected_model(DenseSource(data), landmarks, co);
    const CorrectedDissimilarityOracle approx(model);
    const std::optional<double> rho = proximity_fidelity(n, exact_d, std::cref(approx), o.pairs, o.seed);
    rows.push_back({{"m", m}, {"rho", rho ? json(*rho) : json(nullptr)}});
  }
  json j = envelope("eval fidelity", o);
  j["config"]["m_list"] = o.m_list;
  j["results"] = rows;
  emit(
      j, o, out,
      [&] {
        out << "m       spearman_rho\n";
        for (const auto& r : rows)
          out << std::left << std::setw(8) << r["m"].get<Index>()
              << (r["rho"].is_null() ? std::string("undefined") : std::to_string(r["rho"].get<double>())) << '\n';
      },
      [&] {
        out << "m,rho\n";
        for (const auto& r : rows)
          out << r["m"].get<Index>() << ',' << (r["rho"].is_null() ? std::string() : std::to_string(r["rho"].get<double>()))
              << '\n';
      });
}

void cmd_eval_converge(const Options& o, std::ostream& out) {
  std::function<double(double, double)> kernel;
  if (o.kernel == "min") {
    kernel = [](double x, double y) { return std::min(x, y); };
  } else if (o.kernel == "negabs") {
    kernel = [](double x, double y) { return -std::abs(x - y); };
  } else {
    throw UsageError("unknown --kernel '" + o.kernel + "' (expected min or negabs)");
  }
  const std::vector<Index> ms = parse_index_list(o.m_list, "--m-list");
  const std::vector<ConvergencePoint> pts = convergence_probe(kernel, o.grid, ms, o.seed);
  json j = envelope("eval converge", o);
  j["config"]["kernel"] = o.kernel;
  j["config"]["grid"] = o.grid;
  json rows = json::array();
  for (const auto& p : pts) rows.push_back({{"m", p.m}, {"max_error", p.max_error}});
  j["results"] = rows;
  emit(
      j, o, out,
      [&] {
        out << "m       max_error\n";
        for (const auto& p : pts) out << std::left << std::setw(8) << p.m << std::scientific << p.max_error << '\n';
      },
      [&] {
        out << "m,max_error\n";
        for (const auto& p : pts) out << p.m << ',' << std::setprecision(17) << p.max_error << '\n';
      });
}

void cmd_bench(const Options& o, std::ostream& out) {
  BenchConfig c;
  c.n_list = parse_index_list(o.n_list, "--n-list");
  c.m = o.m == 0 ? 500 : o.m;
  c.mode = parse_correction_mode(o.mode);
  c.standard_cap = o.standard_cap;
  c.run_standard = !o.no_standard;
  c.seed = o.seed;
  BallConfig ball;
  ball.seed = o.seed;
  const std::vector<BenchRecord> recs = benchmark_scaling(ball_source_factory(ball), c);

  json rows = json::array();
  for (const auto& r : recs) {
    json stages = json::object();
    for (const auto& s : r.stages) stages[s.stage] = s.seconds;
    rows.push_back({{"n", r.n},
                    {"m", r.m},
                    {"pipeline", r.pipeline},
                    {"skipped", r.skipped},
                    {"total_seconds", r.total_seconds},
                    {"entries_touched", r.entries_touched},
                    {"stages", stages}});
  }
  json j = envelope("bench scaling", o);
  j["config"]["n_list"] = o.n_list;
  j["config"]["standard_cap"] = o.standard_cap;
  j["records"] = rows;
  emit(
      j, o, out,
      [&] {
        out << "n       pipeline   total_s      entries\n";
        for (const auto& r : recs) {
          out << std::left << std::setw(8) << r.n << std::setw(11) << r.pipeline;
          if (r.skipped) {
            out << "skipped\n";
          } else {
            out << std::setw(13) << std::fixed << std::setprecision(4) << r.total_seconds << r.entries_touched << '\n';
          }
        }
      },
      [&] {
        out << "n,m,pipeline,skipped,total_seconds,entries_touched\n";
        for (const auto& r : recs)
          out << r.n << ',' << r.m << ',' << r.pipeline << ',' << r.skipped << ',' << r.total_seconds << ','
              << r.entries_touched << '\n';
      });
}

void cmd_gen_ball(const Options& o, std::ostream& out) {
  require(o.out, "--out");
  BallConfig c;
  c.n_per_class = o.n_per_class;
  c.dim = o.ball_dim;
  c.radius_a = o.radius_a;
  c.radius_b = o.radius_b;
  c.box = o.box;
  c.seed = o.seed;
  const BallDataset d = ball_dataset(c);
  write_matrix(d.dissimilarities, o.out, format_from_path(o.out));
  json j = envelope("gen ball", o);
  j["config"]["n_per_class"] = c.n_per_class;
  j["config"]["dim"] = c.dim;
  j["config"]["radius_a"] = c.radius_a;
  j["config"]["radius_b"] = c.radius_b;
  j["config"]["box"] = c.effective_box();
  write_sidecar(o.out, j);
  if (!o.labels.empty()) {
    write_labels(d.labels, o.labels);
    write_sidecar(o.labels, j);
  }
  out << "wrote " << d.dissimilarities.size() << " ball dissimilarities to " << o.out << '\n';
}

void add_common(CLI::App* app, Options& o, bool with_m = true) {
  app->add_option("--in", o.in, "input matrix (.pmx binary or .csv)");
  app->add_option("--kind", o.kind, "input kind: sim or dis (required for CSV)");
  if (with_m) app->add_option("--m", o.m, "number of landmarks (0 = all samples)");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--mode", o.mode, "eigenvalue correction: clip, flip, shift or none");
  app->add_option("--tol", o.tol, "relative pseudo-inverse tolerance");
  app->add_option("--rank-tol", o.rank_tol, "relative rank tolerance of the Nystrom spectrum");
  app->add_option("--core-rule", o.core_rule, "corrected core: pullback or landmark-inverse");
  app->add_option("--out,-o", o.out, "output path");
}

void add_table_format(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "stdout format: table, csv or json (--out also writes JSON)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Linear-cost psd kernels from indefinite proximity matrices"};
  app.name("nyprox");
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "cap on worker threads (0 = library default)");

  auto* convert = app.add_subcommand("convert", "dense conversion between squared dissimilarities and similarities");
  add_common(convert, o, false);
  convert->add_option("--to", o.to, "target kind: sim or dis");

  auto* approximate = app.add_subcommand("approximate", "build and store Nystrom factors (PNF1)");
  add_common(approximate, o);

  auto* correct = app.add_subcommand("correct", "build and store a corrected model (PCM1)");
  add_common(correct, o);

  auto* extend = app.add_subcommand("extend", "out-of-sample extension of a t x m block");
  add_common(extend, o, false);
  extend->add_option("--model", o.model, "corrected model file");
  extend->add_option("--self-out", o.self_out, "also write the t x t block among the new points");

  auto* baseline = app.add_subcommand("baseline", "comparison representations");
  baseline->require_subcommand(1);
  auto* lmds = baseline->add_subcommand("lmds", "landmark MDS coordinates of every sample (N x k)");
  add_common(lmds, o);
  lmds->add_option("--dim", o.dim, "embedding dimension (default: all positive directions)");
  auto* dspace = baseline->add_subcommand("dspace", "dissimilarity-space features (N x m)");
  add_common(dspace, o);

  auto* eval = app.add_subcommand("eval", "evaluation experiments");
  eval->require_subcommand(1);
  auto* cv = eval->add_subcommand("cv", "stratified cross-validation with the ridge classifier");
  add_common(cv, o);
  add_table_format(cv, o);
  cv->add_option("--labels", o.labels, "label file, one integer per line");
  cv->add_option("--representation", o.representation, "nystrom, lmds or dspace");
  cv->add_option("--lambda", o.lambda, "ridge regularization (default 1e-3 trace(F^T F)/k)");
  cv->add_option("--folds", o.folds, "folds per repeat");
  cv->add_option("--repeats", o.repeats, "repeats (one landmark draw each)");
  auto* fidelity = eval->add_subcommand("fidelity", "Spearman rank agreement with the dense corrected pipeline");
  add_common(fidelity, o, false);
  add_table_format(fidelity, o);
  fidelity->add_option("--m-list", o.m_list, "comma-separated landmark counts");
  fidelity->add_option("--pairs", o.pairs, "sampled pairs (default: all pairs up to N=700, else 200000)");
  auto* converge = eval->add_subcommand("converge", "Nystrom error of a kernel on a grid as m grows");
  add_common(converge, o, false);
  add_table_format(converge, o);
  converge->add_option("--kernel", o.kernel, "min (min(x,y)) or negabs (-|x-y|)");
  converge->add_option("--grid", o.grid, "grid points on [0,1]");
  converge->add_option("--m-list", o.m_list, "comma-separated ascending landmark counts");

  auto* bench = app.add_subcommand("bench", "runtime benchmarks");
  bench->require_subcommand(1);
  auto* scaling = bench->add_subcommand("scaling", "proposed vs dense pipeline on generated ball data");
  add_common(scaling, o);
  add_table_format(scaling, o);
  scaling->add_option("--n-list", o.n_list, "comma-separated ascending even sample counts");
  scaling->add_option("--standard-cap", o.standard_cap, "largest n for the dense pipeline");
  scaling->add_flag("--no-standard", o.no_standard, "skip the dense pipeline");

  auto* gen = app.add_subcommand("gen", "dataset generators");
  gen->require_subcommand(1);
  auto* ball = gen->add_subcommand("ball", "squared surface distances of non-overlapping balls");
  ball->add_option("--n", o.n_per_class, "balls per class");
  ball->add_option("--dim", o.ball_dim, "space dimension");
  ball->add_option("--radius-a", o.radius_a, "radius of class 0");
  ball->add_option("--radius-b", o.radius_b, "radius of class 1");
  ball->add_option("--box", o.box, "side of the placement cube (0 = 20 (radius_a + radius_b))");
  ball->add_option("--seed", o.seed, "random seed");
  ball->add_option("--out,-o", o.out, "output matrix path");
  ball->add_option("--labels", o.labels, "output label path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Success;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << " (see --help)\n";
    return UsageFailure;
  }

  try {
#ifdef _OPENMP
    if (o.threads > 0) omp_set_num_threads(o.threads);
#endif
    if (o.threads < 0) throw UsageError("--threads must be non-negative");
    if (convert->parsed()) cmd_convert(o, out);
    else if (approximate->parsed()) cmd_approximate(o, out);
    else if (correct->parsed()) cmd_correct(o, out);
    else if (extend->parsed()) cmd_extend(o, out);
    else if (lmds->parsed()) cmd_baseline("lmds", o, out);
    else if (dspace->parsed()) cmd_baseline("dspace", o, out);
    else if (cv->parsed()) cmd_eval_cv(o, out);
    else if (fidelity->parsed()) cmd_eval_fidelity(o, out);
    else if (converge->parsed()) cmd_eval_converge(o, out);
    else if (scaling->parsed()) cmd_bench(o, out);
    else if (ball->parsed()) cmd_gen_ball(o, out);
    return Success;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return UsageFailure;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return UsageFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return DataFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace nyprox::cli
