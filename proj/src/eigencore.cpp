#include <nyprox/eigencore.hpp>

#include <lapacke.h>

#include <cmath>
#include <string>

namespace nyprox {

namespace {

void require_finite_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) throw UsageError(std::string(what) + ": matrix is not square");
  if (!m.allFinite()) throw DataError(std::string(what) + ": non-finite input");
}

// dsyevd on a copy of the lower triangle; values come back ascending.
void lapack_syevd(Matrix& a, Vector& w, char jobz) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(a.rows());
  if (n == 0) return;
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
  if (info != 0) throw DataError("symmetric eigensolver failed (dsyevd info " + std::to_string(info) + ")");
}

}  // namespace

EigenPair sym_eig(const Matrix& m) {
  require_finite_square(m, "sym_eig");
  Matrix a = m;
  Vector w;
  lapack_syevd(a, w, 'V');
  EigenPair out;
  out.values = w.reverse();
  out.vectors = a.rowwise().reverse();
  return out;
}

Vector sym_eigenvalues(const Matrix& m) {
  require_finite_square(m, "sym_eigenvalues");
  Matrix a = m;
  Vector w;
  lapack_syevd(a, w, 'N');
  return w.reverse();
}

double max_abs(const Vector& values) { return values.size() ? values.cwiseAbs().maxCoeff() : 0.0; }

Matrix pinv_sym(const Matrix& m, double rel_tol) {
  const EigenPair e = sym_eig(m);
  const double tau = rel_tol * max_abs(e.values);
  Vector inv = Vector::Zero(e.values.size());
  for (Index i = 0; i < e.values.size(); ++i) {
    if (std::abs(e.values(i)) > tau) inv(i) = 1.0 / e.values(i);
  }
  Matrix out = e.vectors * inv.asDiagonal() * e.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

Signature signature_of(const Vector& values, double rel_tol) {
  const double tau = rel_tol * max_abs(values);
  Signature s;
  for (Index i = 0; i < values.size(); ++i) {
    if (values(i) > tau) {
      ++s.p;
    } else if (values(i) < -tau) {
      ++s.q;
    } else {
      ++s.z;
    }
  }
  return s;
}

Signature signature_of(const Vector& values) {
  return signature_of(values, 1e-8 * static_cast<double>(values.size()));
}

}  // namespace nyprox
