#pragma once

#include <nyprox/types.hpp>

namespace nyprox {

/// Orthonormal eigenvectors (columns) with eigenvalues sorted descending by
/// algebraic value, so positive directions come first.
struct EigenPair {
  Matrix vectors;
  Vector values;
};

/// Counts of positive, negative and (near-)zero eigenvalues.
struct Signature {
  Index p = 0;
  Index q = 0;
  Index z = 0;

  Index rank() const { return p + q; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Full decomposition of a symmetric matrix (LAPACK dsyevd on the lower triangle).
/// Throws DataError on non-finite input.
EigenPair sym_eig(const Matrix& m);

/// Eigenvalues only, descending.
Vector sym_eigenvalues(const Matrix& m);

/// Symmetric pseudo-inverse: eigenvalues with |l| <= rel_tol * max|l| map to 0,
/// the rest to 1/l. The zero matrix maps to the zero matrix.
Matrix pinv_sym(const Matrix& m, double rel_tol = Tolerances{}.pinv);

/// Threshold tau = rel_tol * max|l| (0 when all values vanish); l > tau counts
/// as positive, l < -tau as negative.
Signature signature_of(const Vector& values, double rel_tol);

/// Uses the default zero-classification tolerance 1e-8 * k for k values.
Signature signature_of(const Vector& values);

/// Largest absolute value, 0 for an empty vector.
double max_abs(const Vector& values);

}  // namespace nyprox
