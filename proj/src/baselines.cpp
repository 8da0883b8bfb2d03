#include <nyprox/baselines.hpp>

#include <nyprox/eigencore.hpp>
#include <nyprox/transforms.hpp>

#include <algorithm>
#include <string>

namespace nyprox {

LmdsEmbedding lmds_fit(const Matrix& d_core, std::optional<Index> dim, double rel_tol) {
  if (d_core.rows() != d_core.cols()) throw UsageError("lmds_fit: landmark block must be square");
  if (!d_core.allFinite()) throw DataError("lmds_fit: non-finite landmark dissimilarities");
  if (dim && *dim < 1) throw UsageError("lmds_fit: dimension must be positive");
  const Matrix d = 0.5 * (d_core + d_core.transpose());
  const Matrix s = double_center_values(d);
  const EigenPair e = sym_eig(0.5 * (s + s.transpose()));
  const double tau = rel_tol * max_abs(e.values);
  Index p = 0;
  while (p < e.values.size() && e.values(p) > tau) ++p;
  if (p == 0) throw DataError("lmds_fit: centered landmark block has no positive eigenvalue; embedding is empty");
  const Index k = dim ? std::min(*dim, p) : p;

  LmdsEmbedding out;
  const Vector root = e.values.head(k).cwiseSqrt();
  out.landmark_coords = e.vectors.leftCols(k) * root.asDiagonal();
  out.projection = root.cwiseInverse().asDiagonal() * e.vectors.leftCols(k).transpose();
  out.mean_landmark_dissim = d.colwise().mean().transpose();
  return out;
}

Matrix lmds_project(const LmdsEmbedding& e, const Matrix& d_new) {
  if (d_new.cols() != e.mean_landmark_dissim.size()) {
    throw UsageError("lmds_project: rows have " + std::to_string(d_new.cols()) + " columns, embedding has " +
                     std::to_string(e.mean_landmark_dissim.size()) + " landmarks");
  }
  const Matrix centered = d_new.rowwise() - e.mean_landmark_dissim.transpose();
  return -0.5 * centered * e.projection.transpose();
}

Matrix lmds_similarities(const Matrix& coords_a, const Matrix& coords_b) {
  if (coords_a.cols() != coords_b.cols()) throw UsageError("lmds_similarities: coordinate dimensions differ");
  return coords_a * coords_b.transpose();
}

Matrix dissimilarity_space(const Matrix& d_cross) { return d_cross; }

}  // namespace nyprox
