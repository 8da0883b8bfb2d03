#include <nyprox/nystrom.hpp>

#include "rng.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace nyprox {

IndexList select_landmarks(Index n, Index m, std::uint64_t seed) {
  if (m < 1 || m > n) {
    throw UsageError("select_landmarks: need 1 <= m <= n, got m=" + std::to_string(m) + ", n=" + std::to_string(n));
  }
  IndexList pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), Index{0});
  detail::Rng rng(seed);
  // Partial Fisher-Yates: the first m slots are a uniform m-subset in uniform order.
  for (Index i = 0; i < m; ++i) {
    const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(m));
  return pool;
}

namespace {

void check_landmarks(std::span<const Index> landmarks, Index n) {
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Index l : landmarks) {
    if (l < 0 || l >= n) throw UsageError("landmark index " + std::to_string(l) + " out of range");
    if (seen[static_cast<std::size_t>(l)]) throw UsageError("duplicate landmark index " + std::to_string(l));
    seen[static_cast<std::size_t>(l)] = true;
  }
}

Matrix select_rows(const Matrix& m, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= m.rows()) throw UsageError("row index " + std::to_string(rows[r]) + " out of range");
    out.row(static_cast<Index>(r)) = m.row(rows[r]);
  }
  return out;
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

// Turns a basis C = cross * coeff of an invariant subspace of K^ = cross P cross^T
// into its exact eigenpairs: orthonormalize, then Rayleigh-Ritz on the small
// projected matrix (re-diagonalization). Everything stays O(N m^2).
EigenModel rayleigh_ritz(const Matrix& cross, const Matrix& core_pinv, Matrix coeff, double rank_tol) {
  const Index n = cross.rows();
  EigenModel out;
  if (coeff.cols() == 0) {
    out.C = Matrix(n, 0);
    out.A = Vector(0);
    out.coeff = Matrix(cross.cols(), 0);
    out.signature = Signature{0, 0, n};
    return out;
  }
  Matrix c = cross * coeff;

  // Re-orthonormalize C^T C = L L^T (C <- C L^{-T}); eigen route if Cholesky fails.
  const Matrix gram = symmetrized(c.transpose() * c);
  Eigen::LLT<Matrix> llt(gram);
  Matrix ortho;
  if (llt.info() == Eigen::Success) {
    ortho = llt.matrixU().solve(Matrix::Identity(gram.rows(), gram.cols()));
  } else {
    const EigenPair g = sym_eig(gram);
    const double gmax = max_abs(g.values);
    Index keep = 0;
    while (keep < g.values.size() && g.values(keep) > 1e-10 * gmax) ++keep;
    ortho = g.vectors.leftCols(keep) * g.values.head(keep).cwiseSqrt().cwiseInverse().asDiagonal();
  }
  coeff = coeff * ortho;
  c = c * ortho;

  const Matrix x = cross.transpose() * c;  // m x k
  const EigenPair ritz = sym_eig(symmetrized(x.transpose() * core_pinv * x));
  const double rmax = max_abs(ritz.values);
  std::vector<Index> kept;
  for (Index i = 0; i < ritz.values.size(); ++i)
    if (std::abs(ritz.values(i)) > rank_tol * rmax) kept.push_back(i);

  const Index k = static_cast<Index>(kept.size());
  Matrix w(ritz.vectors.rows(), k);
  out.A.resize(k);
  for (Index j = 0; j < k; ++j) {
    w.col(j) = ritz.vectors.col(kept[static_cast<std::size_t>(j)]);
    out.A(j) = ritz.values(kept[static_cast<std::size_t>(j)]);
  }
  out.coeff = coeff * w;
  out.C = cross * out.coeff;
  out.signature = signature_of(out.A, 0.0);
  out.signature.z = n - out.signature.rank();
  return out;
}

void check_blocks(const Matrix& cross, const Matrix& core, const IndexList& landmarks) {
  if (core.rows() != core.cols()) throw UsageError("Nystrom core block must be square");
  if (cross.cols() != core.rows()) throw UsageError("Nystrom cross block and core disagree on the landmark count");
  if (static_cast<Index>(landmarks.size()) != core.rows()) throw UsageError("landmark list length differs from core size");
  if (!cross.allFinite() || !core.allFinite()) throw DataError("Nystrom factors contain non-finite entries");
}

}  // namespace

NystromFactors make_factors(ProximityKind kind, Matrix cross, Matrix core, IndexList landmarks, double pinv_tol) {
  check_blocks(cross, core, landmarks);
  NystromFactors f;
  f.kind = kind;
  f.landmarks = std::move(landmarks);
  f.cross = std::move(cross);
  f.core = symmetrized(core);
  f.core_pinv = pinv_sym(f.core, pinv_tol);
  return f;
}

NystromFactors make_factors(ProximityKind kind, Matrix cross, Matrix core, Matrix core_pinv, IndexList landmarks) {
  check_blocks(cross, core, landmarks);
  if (core_pinv.rows() != core.rows() || core_pinv.cols() != core.cols())
    throw UsageError("core pseudo-inverse has the wrong size");
  NystromFactors f;
  f.kind = kind;
  f.landmarks = std::move(landmarks);
  f.cross = std::move(cross);
  f.core = symmetrized(core);
  f.core_pinv = std::move(core_pinv);
  return f;
}

NystromFactors nystrom_factors(const ProximitySource& source, std::span<const Index> landmarks, double pinv_tol) {
  const Index n = source.size();
  check_landmarks(landmarks, n);
  IndexList rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), Index{0});
  Matrix cross = gather_block(source, rows, landmarks);
  Matrix core = select_rows(cross, landmarks);
  return make_factors(source.kind(), std::move(cross), std::move(core), IndexList(landmarks.begin(), landmarks.end()),
                      pinv_tol);
}

Matrix reconstruct_block(const NystromFactors& f, std::span<const Index> rows, std::span<const Index> cols) {
  const Matrix left = select_rows(f.cross, rows) * f.core_pinv;
  return left * select_rows(f.cross, cols).transpose();
}

Matrix reconstruct(const NystromFactors& f) { return f.cross * f.core_pinv * f.cross.transpose(); }

EigenModel nystrom_eig_psd(const NystromFactors& f, const Tolerances& tol) {
  const EigenPair core = sym_eig(f.core);
  const double lmax = max_abs(core.values);
  if (core.values.size() && core.values.minCoeff() < -tol.pinv * lmax) {
    throw UsageError("nystrom_eig_psd: landmark core is indefinite (min eigenvalue " +
                     std::to_string(core.values.minCoeff()) + "); use nystrom_eig_indefinite");
  }
  Index r = 0;
  while (r < core.values.size() && core.values(r) > tol.pinv * lmax) ++r;
  // B = cross U L^{-1/2}, so K^ = B B^T.
  const Matrix t1 = core.vectors.leftCols(r) * core.values.head(r).cwiseSqrt().cwiseInverse().asDiagonal();
  const Matrix b = f.cross * t1;
  const EigenPair small = sym_eig(symmetrized(b.transpose() * b));
  const double amax = max_abs(small.values);
  Index k = 0;
  while (k < small.values.size() && small.values(k) > tol.rank * amax) ++k;
  // C = B V A^{-1/2}.
  Matrix coeff = t1 * small.vectors.leftCols(k) * small.values.head(k).cwiseSqrt().cwiseInverse().asDiagonal();
  return rayleigh_ritz(f.cross, f.core_pinv, std::move(coeff), tol.rank);
}

EigenModel nystrom_eig_indefinite(const NystromFactors& f, const Tolerances& tol) {
  // S^2 = cross S~ cross^T with S~ = P (cross^T cross) P.
  const Matrix gram = f.cross.transpose() * f.cross;
  const Matrix squared_core = symmetrized(f.core_pinv * gram * f.core_pinv);
  const EigenPair sq = sym_eig(squared_core);
  Index r = 0;
  while (r < sq.values.size() && sq.values(r) > 0.0) ++r;
  // B = cross U L^{1/2}, so S^2 = B B^T and B^T B carries the squared spectrum.
  const Matrix t1 = sq.vectors.leftCols(r) * sq.values.head(r).cwiseSqrt().asDiagonal();
  const Matrix b = f.cross * t1;
  const EigenPair small = sym_eig(symmetrized(b.transpose() * b));
  const double amax = max_abs(small.values);
  Index k = 0;
  while (k < small.values.size() && small.values(k) > tol.rank * tol.rank * amax) ++k;
  Matrix coeff = t1 * small.vectors.leftCols(k) * small.values.head(k).cwiseSqrt().cwiseInverse().asDiagonal();
  // Eigenvalues of S^ itself from C^T S^ C, re-diagonalized to split +l/-l collisions.
  return rayleigh_ritz(f.cross, f.core_pinv, std::move(coeff), tol.rank);
}

CenteredBlocks nystrom_double_center(const Matrix& d_cross, const Matrix& d_core, double pinv_tol) {
  if (d_core.rows() != d_core.cols()) throw UsageError("nystrom_double_center: block sizes disagree");
  if (!d_core.allFinite()) throw DataError("nystrom_double_center: non-finite input");
  return nystrom_double_center(d_cross, d_core, pinv_sym(symmetrized(d_core), pinv_tol));
}

CenteredBlocks nystrom_double_center(const Matrix& d_cross, const Matrix& d_core, const Matrix& d_core_pinv) {
  const Index m = d_core.rows();
  if (d_core.cols() != m || d_cross.cols() != m) throw UsageError("nystrom_double_center: block sizes disagree");
  if (d_core_pinv.rows() != m || d_core_pinv.cols() != m)
    throw UsageError("nystrom_double_center: core pseudo-inverse has the wrong size");
  if (d_cross.rows() == 0) throw UsageError("nystrom_double_center: no training rows");
  if (!d_cross.allFinite() || !d_core.allFinite()) throw DataError("nystrom_double_center: non-finite input");
  const Matrix core = symmetrized(d_core);
  const double n = static_cast<double>(d_cross.rows());

  CenteredBlocks out;
  out.stats.n = d_cross.rows();
  out.stats.s = d_cross.colwise().sum().transpose();
  out.stats.core_pinv_s = d_core_pinv * out.stats.s;
  out.stats.g = out.stats.s.dot(out.stats.core_pinv_s);

  const Vector& s = out.stats.s;
  const double grand = out.stats.g / (n * n);
  out.core.resize(m, m);
  for (Index b = 0; b < m; ++b)
    for (Index a = 0; a < m; ++a) out.core(a, b) = -0.5 * (core(a, b) - s(b) / n - s(a) / n + grand);
  out.cross = center_rows(d_cross, out.stats);
  return out;
}

Matrix center_rows(const Matrix& d_rows, const CenteringStats& stats) {
  const Index m = stats.s.size();
  if (d_rows.cols() != m) {
    throw UsageError("center_rows: rows have " + std::to_string(d_rows.cols()) + " columns, model has " +
                     std::to_string(m) + " landmarks");
  }
  const double n = static_cast<double>(stats.n);
  const double grand = stats.g / (n * n);
  const Vector row_term = d_rows * stats.core_pinv_s / n;
  Matrix out(d_rows.rows(), m);
  for (Index b = 0; b < m; ++b)
    for (Index i = 0; i < d_rows.rows(); ++i)
      out(i, b) = -0.5 * (d_rows(i, b) - stats.s(b) / n - row_term(i) + grand);
  return out;
}

CenteringSummands nystrom_cross_summands(const Matrix& d_cross, const CenteredBlocks& centered) {
  const auto& st = centered.stats;
  const Index rows = d_cross.rows();
  const Index m = d_cross.cols();
  const double n = static_cast<double>(st.n);
  CenteringSummands out;
  out.dissimilarity = d_cross;
  out.column_means = Vector::Ones(rows) * (st.s.transpose() / n);
  out.row_means = (d_cross * st.core_pinv_s / n) * Vector::Ones(m).transpose();
  out.grand_mean = Matrix::Constant(rows, m, st.g / (n * n));
  return out;
}

CenteringSummands dense_cross_summands(const Matrix& d, std::span<const Index> landmarks) {
  const Index n = d.rows();
  const Index m = static_cast<Index>(landmarks.size());
  const double nn = static_cast<double>(n);
  const Vector col_sums = d.colwise().sum().transpose();
  const Vector row_sums = d.rowwise().sum();
  CenteringSummands out;
  out.dissimilarity.resize(n, m);
  out.column_means.resize(n, m);
  for (Index b = 0; b < m; ++b) {
    const Index l = landmarks[static_cast<std::size_t>(b)];
    out.dissimilarity.col(b) = d.col(l);
    out.column_means.col(b).setConstant(col_sums(l) / nn);
  }
  out.row_means = (row_sums / nn) * Vector::Ones(m).transpose();
  out.grand_mean = Matrix::Constant(n, m, d.sum() / (nn * nn));
  return out;
}

}  // namespace nyprox
