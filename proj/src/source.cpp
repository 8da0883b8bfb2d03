#include <nyprox/source.hpp>

namespace nyprox {

void DenseSource::row(Index i, std::span<const Index> cols, std::span<double> out) const {
  for (std::size_t k = 0; k < cols.size(); ++k) out[k] = m_->values(i, cols[k]);
}

void FunctionSource::row(Index i, std::span<const Index> cols, std::span<double> out) const {
  for (std::size_t k = 0; k < cols.size(); ++k) out[k] = element_(i, cols[k]);
}

void BallSource::row(Index i, std::span<const Index> cols, std::span<double> out) const {
  for (std::size_t k = 0; k < cols.size(); ++k) out[k] = geometry_->squared_surface_distance(i, cols[k]);
}

void CountingSource::row(Index i, std::span<const Index> cols, std::span<double> out) const {
  entries_ += cols.size();
  inner_->row(i, cols, out);
}

Matrix gather_block(const ProximitySource& source, std::span<const Index> rows, std::span<const Index> cols) {
  const Index n = source.size();
  for (Index c : cols)
    if (c < 0 || c >= n) throw UsageError("gather_block: column index out of range");
  Matrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  std::vector<double> buf(cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= n) throw UsageError("gather_block: row index out of range");
    source.row(rows[r], cols, buf);
    for (std::size_t k = 0; k < cols.size(); ++k) out(static_cast<Index>(r), static_cast<Index>(k)) = buf[k];
  }
  return out;
}

ProximityMatrix materialize(const ProximitySource& source) {
  IndexList all(static_cast<std::size_t>(source.size()));
  for (Index i = 0; i < source.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  ProximityMatrix m;
  m.kind = source.kind();
  m.values = gather_block(source, all, all);
  return m;
}

}  // namespace nyprox
