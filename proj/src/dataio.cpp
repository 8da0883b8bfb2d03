#include <nyprox/dataio.hpp>

#include "binio.hpp"
#include "rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace nyprox {

const char* to_string(ProximityKind kind) {
  return kind == ProximityKind::Similarity ? "similarity" : "squared-dissimilarity";
}

int LabelVector::num_classes() const {
  if (labels.empty()) return 0;
  return *std::max_element(labels.begin(), labels.end()) + 1;
}

MatrixFormat format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? MatrixFormat::Csv : MatrixFormat::Pmx;
}

namespace {

std::string coord(Index i, Index j) { return "(" + std::to_string(i) + ", " + std::to_string(j) + ")"; }

ProximityKind kind_from_byte(std::uint8_t b, const std::filesystem::path& path) {
  if (b > 1) throw DataError("'" + path.string() + "': unknown kind flag " + std::to_string(b));
  return static_cast<ProximityKind>(b);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Parses a rectangular CSV of doubles; reports the first bad coordinate.
Matrix read_csv_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = trim(line);
    if (view.empty()) continue;
    std::vector<double> row;
    const Index r = static_cast<Index>(rows.size());
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = view.find(',', start);
      const std::string_view field =
          trim(view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      const Index c = static_cast<Index>(row.size());
      double v = 0.0;
      const auto* first = field.data();
      const auto* last = field.data() + field.size();
      if (!field.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (field.empty() || ec != std::errc{} || ptr != last) {
        throw DataError("'" + path.string() + "': cannot parse entry " + coord(r, c) + ": '" + std::string(field) + "'");
      }
      if (!std::isfinite(v)) throw DataError("'" + path.string() + "': non-finite entry at " + coord(r, c));
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("'" + path.string() + "': row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                      " fields, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  const Index n_rows = static_cast<Index>(rows.size());
  const Index n_cols = rows.empty() ? 0 : static_cast<Index>(rows.front().size());
  Matrix m(n_rows, n_cols);
  for (Index i = 0; i < n_rows; ++i)
    for (Index j = 0; j < n_cols; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void write_csv_values(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  std::array<char, 64> buf{};
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out.put(',');
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), m(i, j), std::chars_format::general, 17);
      out.write(buf.data(), res.ptr - buf.data());
    }
    out.put('\n');
  }
  out.flush();
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

}  // namespace

bool symmetrize(Matrix& values) {
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
  const double asym = values.size() ? (values - values.transpose()).cwiseAbs().maxCoeff() : 0.0;
  const Matrix sym = 0.5 * (values + values.transpose());
  values = sym;
  return asym > 1e-9 * scale;
}

void validate(const ProximityMatrix& m) {
  const Index n = m.values.rows();
  if (m.values.cols() != n) {
    throw DataError("proximity matrix is not square: " + std::to_string(n) + "x" + std::to_string(m.values.cols()));
  }
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double v = m.values(i, j);
      if (!std::isfinite(v)) throw DataError("non-finite entry at " + coord(i, j));
      if (m.values(j, i) != v) throw DataError("asymmetric entry at " + coord(i, j));
      if (m.kind == ProximityKind::SquaredDissimilarity) {
        if (i == j && v != 0.0) throw DataError("non-zero dissimilarity diagonal at " + coord(i, j));
        if (v < 0.0) throw DataError("negative dissimilarity at " + coord(i, j));
      }
    }
  }
}

ProximityMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format, std::optional<ProximityKind> kind) {
  ProximityMatrix m;
  if (format == MatrixFormat::Pmx) {
    detail::BinaryReader in(path);
    if (in.magic() != "PMX1") throw DataError("'" + path.string() + "': bad magic, expected PMX1");
    m.kind = kind_from_byte(in.u8(), path);
    if (kind && *kind != m.kind) {
      throw KindError("'" + path.string() + "' holds a " + to_string(m.kind) + " matrix, expected " + to_string(*kind));
    }
    const std::uint64_t n = in.u64();
    m.values = in.matrix(n, n);
    in.expect_end();
  } else {
    if (!kind) throw UsageError("CSV input needs an explicit kind");
    m.kind = *kind;
    m.values = read_csv_values(path);
    if (m.values.rows() != m.values.cols()) {
      throw DataError("'" + path.string() + "': non-square data " + std::to_string(m.values.rows()) + "x" +
                      std::to_string(m.values.cols()));
    }
  }
  m.asymmetry_warning = symmetrize(m.values);
  try {
    validate(m);
  } catch (const DataError& e) {
    throw DataError("'" + path.string() + "': " + e.what());
  }
  return m;
}

void write_matrix(const ProximityMatrix& m, const std::filesystem::path& path, MatrixFormat format) {
  if (format == MatrixFormat::Pmx) {
    detail::BinaryWriter out(path);
    out.magic("PMX1");
    out.u8(static_cast<std::uint8_t>(m.kind));
    out.u64(static_cast<std::uint64_t>(m.size()));
    out.matrix(m.values);
    out.finish();
  } else {
    write_csv_values(m.values, path);
  }
}

ProximityBlock read_block(const std::filesystem::path& path, MatrixFormat format, std::optional<ProximityKind> kind) {
  ProximityBlock b;
  if (format == MatrixFormat::Pmx) {
    detail::BinaryReader in(path);
    if (in.magic() != "PMB1") throw DataError("'" + path.string() + "': bad magic, expected PMB1");
    b.kind = kind_from_byte(in.u8(), path);
    if (kind && *kind != b.kind) {
      throw KindError("'" + path.string() + "' holds a " + to_string(b.kind) + " block, expected " + to_string(*kind));
    }
    const std::uint64_t rows = in.u64();
    const std::uint64_t cols = in.u64();
    b.values = in.matrix(rows, cols);
    in.expect_end();
  } else {
    if (!kind) throw UsageError("CSV input needs an explicit kind");
    b.kind = *kind;
    b.values = read_csv_values(path);
  }
  return b;
}

void write_block(const ProximityBlock& b, const std::filesystem::path& path, MatrixFormat format) {
  if (format == MatrixFormat::Pmx) {
    detail::BinaryWriter out(path);
    out.magic("PMB1");
    out.u8(static_cast<std::uint8_t>(b.kind));
    out.u64(static_cast<std::uint64_t>(b.values.rows()));
    out.u64(static_cast<std::uint64_t>(b.values.cols()));
    out.matrix(b.values);
    out.finish();
  } else {
    write_csv_values(b.values, path);
  }
}

LabelVector normalize_labels(const std::vector<long long>& raw) {
  std::map<long long, int> ids;
  for (long long v : raw) ids.emplace(v, 0);
  int next = 0;
  for (auto& [value, id] : ids) id = next++;
  LabelVector out;
  out.labels.reserve(raw.size());
  for (long long v : raw) out.labels.push_back(ids.at(v));
  return out;
}

LabelVector read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::vector<long long> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
    if (ec != std::errc{} || ptr != view.data() + view.size()) {
      throw DataError("'" + path.string() + "': line " + std::to_string(line_no) + " is not an integer label");
    }
    raw.push_back(v);
  }
  return normalize_labels(raw);
}

void write_labels(const LabelVector& labels, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  for (int l : labels.labels) out << l << '\n';
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

double BallConfig::effective_box() const { return box > 0.0 ? box : 20.0 * (radius_a + radius_b); }

double BallGeometry::squared_surface_distance(Index i, Index j) const {
  if (i == j) return 0.0;
  const double gap = (centers.row(i) - centers.row(j)).norm() - radii(i) - radii(j);
  return gap * gap;
}

BallGeometry ball_geometry(const BallConfig& config) {
  if (!(config.radius_a > 0.0) || !(config.radius_b > 0.0)) throw ConfigError("ball radii must be positive");
  if (config.n_per_class < 1 || config.dim < 1) throw ConfigError("ball generator needs n_per_class >= 1 and dim >= 1");
  const Index n = 2 * config.n_per_class;
  const double box = config.effective_box();
  constexpr std::uint64_t kMaxAttempts = 1'000'000;

  BallGeometry g;
  g.centers.resize(n, config.dim);
  g.radii.resize(n);
  g.labels.labels.resize(static_cast<std::size_t>(n));
  detail::Rng rng(config.seed);
  std::uint64_t attempts = 0;
  Vector candidate(config.dim);
  for (Index i = 0; i < n; ++i) {
    // Classes alternate so that neither one is placed into a fuller cube.
    const int label = static_cast<int>(i % 2);
    const double r = label == 0 ? config.radius_a : config.radius_b;
    while (true) {
      if (++attempts > kMaxAttempts) {
        throw ConfigError("ball placement exceeded 10^6 attempts after " + std::to_string(i) +
                          " balls; enlarge the box or reduce the sample count");
      }
      for (Index d = 0; d < config.dim; ++d) candidate(d) = box * rng.uniform();
      bool free = true;
      for (Index j = 0; j < i && free; ++j) {
        free = (g.centers.row(j).transpose() - candidate).norm() > r + g.radii(j);
      }
      if (free) break;
    }
    g.centers.row(i) = candidate.transpose();
    g.radii(i) = r;
    g.labels.labels[static_cast<std::size_t>(i)] = label;
  }
  return g;
}

BallDataset ball_dataset(const BallConfig& config) {
  const BallGeometry g = ball_geometry(config);
  const Index n = g.size();
  BallDataset out;
  out.dissimilarities.kind = ProximityKind::SquaredDissimilarity;
  out.dissimilarities.values.resize(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i <= j; ++i) {
      const double d = g.squared_surface_distance(i, j);
      out.dissimilarities.values(i, j) = d;
      out.dissimilarities.values(j, i) = d;
    }
  out.labels = g.labels;
  return out;
}

}  // namespace nyprox
