#include <nyprox/transforms.hpp>

#include <cmath>
#include <string>

namespace nyprox {

Matrix double_center_values(const Matrix& d) {
  const Index n = d.rows();
  if (n == 0) return Matrix(0, 0);
  const double inv_n = 1.0 / static_cast<double>(n);
  const Vector r = d.rowwise().sum();
  const Vector c = d.colwise().sum().transpose();
  const double g = r.sum();
  Matrix s(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) s(i, j) = -0.5 * (d(i, j) - r(i) * inv_n - c(j) * inv_n + g * inv_n * inv_n);
  return s;
}

ProximityMatrix double_center(const ProximityMatrix& d) {
  if (d.kind != ProximityKind::SquaredDissimilarity) {
    throw KindError("double_center expects squared dissimilarities, got a similarity matrix");
  }
  ProximityMatrix s;
  s.kind = ProximityKind::Similarity;
  s.values = double_center_values(d.values);
  s.values = 0.5 * (s.values + s.values.transpose()).eval();
  return s;
}

ProximityMatrix sim_to_dis(const ProximityMatrix& s) {
  if (s.kind != ProximityKind::Similarity) throw KindError("sim_to_dis expects a similarity matrix");
  const Index n = s.size();
  const double floor = -1e-9 * (n ? s.values.cwiseAbs().maxCoeff() : 0.0);
  ProximityMatrix d;
  d.kind = ProximityKind::SquaredDissimilarity;
  d.values.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    d.values(j, j) = 0.0;
    for (Index i = 0; i < j; ++i) {
      double v = s.values(i, i) + s.values(j, j) - 2.0 * s.values(i, j);
      if (v < 0.0) {
        if (v < floor) {
          throw DataError("sim_to_dis: negative squared distance " + std::to_string(v) + " at (" + std::to_string(i) +
                          ", " + std::to_string(j) + "); the similarity is not inner-product-like");
        }
        v = 0.0;
      }
      d.values(i, j) = v;
      d.values(j, i) = v;
    }
  }
  return d;
}

PseudoEuclideanEmbedding pe_embed(const ProximityMatrix& s, double rel_tol) {
  if (s.kind != ProximityKind::Similarity) throw KindError("pe_embed expects a similarity matrix");
  const EigenPair e = sym_eig(s.values);
  const Signature sig = signature_of(e.values, rel_tol);
  const Index n = s.size();
  PseudoEuclideanEmbedding out;
  out.signature = sig;
  out.coords.resize(n, sig.rank());
  // Positive values are leading (descending); negatives are the tail, most
  // negative last, so they are copied in reverse.
  for (Index k = 0; k < sig.p; ++k) out.coords.col(k) = e.vectors.col(k) * std::sqrt(e.values(k));
  for (Index k = 0; k < sig.q; ++k) {
    const Index src = n - 1 - k;
    out.coords.col(sig.p + k) = e.vectors.col(src) * std::sqrt(-e.values(src));
  }
  return out;
}

double pe_inner(std::span<const double> x, std::span<const double> y, const Signature& sig) {
  const auto dim = static_cast<std::size_t>(sig.rank());
  if (x.size() != dim || y.size() != dim) {
    throw UsageError("pe_inner: vectors of length " + std::to_string(x.size()) + " and " + std::to_string(y.size()) +
                     " do not match signature dimension " + std::to_string(dim));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) acc += (static_cast<Index>(i) < sig.p ? 1.0 : -1.0) * x[i] * y[i];
  return acc;
}

double relational_distance(const ProximityMatrix& d, const Vector& alpha, Index i) {
  if (d.kind != ProximityKind::SquaredDissimilarity) throw KindError("relational_distance expects squared dissimilarities");
  if (alpha.size() != d.size()) throw UsageError("relational_distance: weight vector length mismatch");
  if (i < 0 || i >= d.size()) throw UsageError("relational_distance: index out of range");
  if (std::abs(alpha.sum() - 1.0) > 1e-12) throw UsageError("relational_distance: weights must sum to 1");
  return d.values.row(i).dot(alpha) - 0.5 * alpha.dot(d.values * alpha);
}

}  // namespace nyprox
