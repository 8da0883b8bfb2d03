#pragma once

#include <nyprox/dataio.hpp>
#include <nyprox/eigencore.hpp>

#include <span>

namespace nyprox {

/// S = -J D J / 2 with J = I - 11^T/N, evaluated in O(N^2) through row sums.
/// Throws KindError for similarity input.
ProximityMatrix double_center(const ProximityMatrix& d);

/// Matrix-level form of `double_center`, no kind or invariant checks.
Matrix double_center_values(const Matrix& d);

/// D_ij = S_ii + S_jj - 2 S_ij. Round-off negatives down to -1e-9 * max|S| are
/// clamped to zero; anything more negative throws DataError.
ProximityMatrix sim_to_dis(const ProximityMatrix& s);

struct PseudoEuclideanEmbedding {
  /// N x (p+q); the first p columns span the positive part.
  Matrix coords;
  Signature signature;
};

/// V = U |Lambda|^{1/2} over the non-zero spectrum, positive directions first
/// (descending), then negative ones (most negative first).
PseudoEuclideanEmbedding pe_embed(const ProximityMatrix& s, double rel_tol);

/// <x, y>_{p,q} = sum_{i<p} x_i y_i - sum_{i>=p} x_i y_i.
double pe_inner(std::span<const double> x, std::span<const double> y, const Signature& sig);

/// Squared distance between sample i and the prototype sum_j alpha_j v_j:
/// [D alpha]_i - alpha^T D alpha / 2. Weights must sum to 1 within 1e-12.
double relational_distance(const ProximityMatrix& d, const Vector& alpha, Index i);

}  // namespace nyprox
