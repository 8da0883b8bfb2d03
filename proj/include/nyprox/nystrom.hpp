#pragma once

#include <nyprox/eigencore.hpp>
#include <nyprox/source.hpp>

#include <cstdint>
#include <span>

namespace nyprox {

/// m distinct indices from 0..n-1, uniform without replacement and reproducible
/// for a given seed on every platform. Throws UsageError unless 1 <= m <= n.
IndexList select_landmarks(Index n, Index m, std::uint64_t seed);

/// K^ = cross * pinv(core) * cross^T.
///
/// `cross` holds the N x m block between all rows and the landmarks, `core` the
/// m x m landmark block. When the landmarks are themselves rows of the source,
/// the landmark rows of `cross` coincide with `core`.
struct NystromFactors {
  ProximityKind kind = ProximityKind::Similarity;
  IndexList landmarks;
  Matrix cross;
  Matrix core;
  Matrix core_pinv;

  Index rows() const { return cross.rows(); }
  Index num_landmarks() const { return core.rows(); }
};

/// Reads only the N x m landmark columns of the source (N*m entries).
NystromFactors nystrom_factors(const ProximitySource& source, std::span<const Index> landmarks,
                               double pinv_tol = Tolerances{}.pinv);

/// Factors from blocks that were assembled elsewhere, e.g. training rows against
/// landmarks drawn from a larger index set. `core` is symmetrized.
NystromFactors make_factors(ProximityKind kind, Matrix cross, Matrix core, IndexList landmarks,
                            double pinv_tol = Tolerances{}.pinv);

/// Same with pinv(core) already at hand, e.g. shared by several fits on one landmark block.
NystromFactors make_factors(ProximityKind kind, Matrix cross, Matrix core, Matrix core_pinv, IndexList landmarks);

/// Block of K^ at the requested positions, O(|rows| * |cols| * m).
Matrix reconstruct_block(const NystromFactors& f, std::span<const Index> rows, std::span<const Index> cols);

/// Full N x N reconstruction; only for small N.
Matrix reconstruct(const NystromFactors& f);

/// Eigendecomposition K^ = C diag(A) C^T of a Nystrom approximation.
///
/// `coeff` expresses the eigenvectors through the cross block, C = cross * coeff,
/// which is what lets corrected models and out-of-sample rows reuse them.
struct EigenModel {
  Matrix C;
  Vector A;
  Signature signature;
  Matrix coeff;

  Index rank() const { return A.size(); }
};

/// Linear-time decomposition for a psd core: B = cross U L^{-1/2},
/// B^T B = V A V^T, C = B V A^{-1/2}. Throws UsageError when the core has an
/// eigenvalue below -pinv_tol * max (use `nystrom_eig_indefinite`).
EigenModel nystrom_eig_psd(const NystromFactors& f, const Tolerances& tol = {});

/// Linear-time decomposition for an arbitrary symmetric core.
///
/// The squared approximation cross * S~ * cross^T with S~ = P (cross^T cross) P,
/// P = pinv(core), is psd and shares its eigenvectors with K^; it is decomposed
/// like the psd case. The basis is then re-orthonormalized and the eigenvalues
/// recovered from the small matrix C^T K^ C, which is re-diagonalized so that
/// +l/-l pairs (which collide in the square) come out separated.
EigenModel nystrom_eig_indefinite(const NystromFactors& f, const Tolerances& tol = {});

/// Training statistics needed to center dissimilarity rows against the landmarks.
struct CenteringStats {
  Vector s;              ///< landmark column sums over the N training rows
  double g = 0.0;        ///< approximated grand sum s^T pinv(D_core) s
  Index n = 0;           ///< training count N
  Vector core_pinv_s;    ///< pinv(D_core) s, cached for row centering
};

struct CenteredBlocks {
  Matrix core;   ///< S_{m,m}
  Matrix cross;  ///< S_{N,m}
  CenteringStats stats;
};

/// Double centering of a Nystrom-approximated squared dissimilarity in O(Nm + m^3):
///   S_core  = -1/2 [D_core  - 1 s/N - s^T 1^T/N                + g/N^2]
///   S_cross = -1/2 [D_cross - 1 s/N - (D_cross pinv(D_core) s) 1^T/N + g/N^2]
CenteredBlocks nystrom_double_center(const Matrix& d_cross, const Matrix& d_core,
                                     double pinv_tol = Tolerances{}.pinv);
/// Same with pinv(D_core) supplied by the caller.
CenteredBlocks nystrom_double_center(const Matrix& d_cross, const Matrix& d_core, const Matrix& d_core_pinv);

/// Centers t x m rows of squared dissimilarities to the landmarks with frozen
/// training statistics; training rows reproduce the S_cross rows exactly.
Matrix center_rows(const Matrix& d_rows, const CenteringStats& stats);

/// The four bracketed summands of S_cross, each as an N x m matrix, so the
/// centering can be compared term by term with dense double centering.
struct CenteringSummands {
  Matrix dissimilarity;
  Matrix column_means;
  Matrix row_means;
  Matrix grand_mean;
};

CenteringSummands nystrom_cross_summands(const Matrix& d_cross, const CenteredBlocks& centered);

/// The same summands of dense double centering restricted to the N x m landmark block.
CenteringSummands dense_cross_summands(const Matrix& d, std::span<const Index> landmarks);

}  // namespace nyprox
