#include <doctest.h>

#include <nyprox/nystrom.hpp>
#include <nyprox/dataio.hpp>
#include <nyprox/transforms.hpp>

#include "test_support.hpp"

#include <algorithm>
#include <set>

using namespace nyprox;

namespace {

NystromFactors factors_of(const Matrix& k, const IndexList& landmarks) {
  const ProximityMatrix pm{ProximityKind::Similarity, k};
  return nystrom_factors(DenseSource(pm), landmarks);
}

IndexList first(Index m) {
  IndexList l(static_cast<std::size_t>(m));
  std::iota(l.begin(), l.end(), Index{0});
  return l;
}

// Distance between the orthogonal projectors onto two column spans.
double projector_distance(const Matrix& a, const Matrix& b) {
  return (a * a.transpose() - b * b.transpose()).norm();
}

}  // namespace

TEST_CASE("select_landmarks basics") {
  IndexList all = select_landmarks(5, 5, 3);
  std::sort(all.begin(), all.end());
  CHECK(all == first(5));
  CHECK(select_landmarks(100, 10, 42) == select_landmarks(100, 10, 42));
  CHECK(select_landmarks(100, 10, 42) != select_landmarks(100, 10, 43));
  const IndexList l = select_landmarks(100, 30, 1);
  CHECK(std::set<Index>(l.begin(), l.end()).size() == 30);
  CHECK_THROWS_AS(select_landmarks(5, 6, 0), UsageError);
  CHECK_THROWS_AS(select_landmarks(5, 0, 0), UsageError);
}

TEST_CASE("select_landmarks is uniform") {
  std::vector<int> count(1000, 0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    for (Index i : select_landmarks(1000, 10, seed)) ++count[static_cast<std::size_t>(i)];
  const double sigma = std::sqrt(1000.0 * 0.01 * 0.99);
  for (int c : count) CHECK(std::abs(c - 10.0) <= 4.0 * sigma);
}

TEST_CASE("all landmarks reproduce the matrix") {
  std::mt19937_64 rng(20);
  const Matrix k = testing::random_symmetric(rng, 12);
  const NystromFactors f = factors_of(k, select_landmarks(12, 12, 1));
  CHECK((reconstruct(f) - k).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("rank-one kernel from a single landmark") {
  const Vector x = (Vector(3) << 1, 2, 3).finished();
  const Matrix k = x * x.transpose();
  const NystromFactors f = factors_of(k, {0});
  CHECK((reconstruct(f) - k).cwiseAbs().maxCoeff() <= 1e-12);
  // landmark rows of cross equal the core
  CHECK(f.cross.row(0) == f.core.row(0));
}

TEST_CASE("low-rank indefinite matrices are reproduced exactly") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const Index n = 20 + rep * 2;
    const Index r = 1 + rep % 5;
    const Matrix k = testing::random_low_rank(rng, n, r, (r + 1) / 2);
    const Index m = r + rep % 3;
    const NystromFactors f = factors_of(k, select_landmarks(n, m, static_cast<std::uint64_t>(rep)));
    CHECK(testing::rel_fro(reconstruct(f), k) <= 1e-8);
  }
}

TEST_CASE("reconstruct_block") {
  std::mt19937_64 rng(22);
  const Matrix k = testing::random_symmetric(rng, 15);
  const IndexList l = select_landmarks(15, 6, 2);
  const NystromFactors f = factors_of(k, l);
  CHECK((reconstruct_block(f, l, l) - f.core).cwiseAbs().maxCoeff() <= 1e-9);
  const IndexList rows{3, 0, 14};
  const IndexList cols{1, 7};
  const Matrix full = reconstruct(f);
  const Matrix block = reconstruct_block(f, rows, cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      CHECK(block(Index(i), Index(j)) == doctest::Approx(full(rows[i], cols[j])).epsilon(1e-10));

  const Matrix x = testing::random_matrix(rng, 15, 8);
  const NystromFactors psd = factors_of(x * x.transpose(), l);
  for (Index i = 0; i < 15; ++i) CHECK(reconstruct_block(psd, IndexList{i}, IndexList{i})(0, 0) >= -1e-9);
  CHECK_THROWS_AS(reconstruct_block(f, IndexList{15}, IndexList{0}), UsageError);
}

TEST_CASE("factors from a row oracle touch only the landmark columns") {
  std::mt19937_64 rng(23);
  const ProximityMatrix pm{ProximityKind::Similarity, testing::random_symmetric(rng, 50)};
  DenseSource dense(pm);
  CountingSource counted(dense);
  const NystromFactors f = nystrom_factors(counted, select_landmarks(50, 7, 3));
  CHECK(counted.entries() == 50u * 7u);
  CHECK(f.rows() == 50);
  CHECK(f.num_landmarks() == 7);
  CHECK_THROWS_AS(nystrom_factors(dense, IndexList{1, 1}), UsageError);
  CHECK_THROWS_AS(nystrom_factors(dense, IndexList{50}), UsageError);
}

TEST_CASE("psd decomposition of a rank-one kernel") {
  const Vector x = (Vector(3) << 1, 2, 3).finished();
  const EigenModel e = nystrom_eig_psd(factors_of(x * x.transpose(), {0}));
  REQUIRE(e.rank() == 1);
  CHECK(e.A(0) == doctest::Approx(14.0).epsilon(1e-12));
  CHECK(std::abs(e.C.col(0).dot(x / x.norm())) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(e.signature == Signature{1, 0, 2});
}

TEST_CASE("psd decomposition matches the dense spectrum") {
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix x = testing::random_matrix(rng, 40, 12);
    const NystromFactors f = factors_of(x * x.transpose(), select_landmarks(40, 8, rep));
    const Matrix khat = reconstruct(f);
    const EigenModel e = nystrom_eig_psd(f);
    REQUIRE(e.rank() == 8);
    const Vector ref = testing::reference_eigenvalues(khat).head(8);
    CHECK((e.A - ref).cwiseAbs().maxCoeff() <= 1e-8 * ref(0));
    CHECK((e.C.transpose() * e.C - Matrix::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((e.C * e.A.asDiagonal() * e.C.transpose() - khat).norm() <= 1e-8 * khat.norm());
    CHECK((f.cross * e.coeff - e.C).norm() <= 1e-10 * e.C.norm());
  }
}

TEST_CASE("psd decomposition edge cases") {
  const EigenModel zero = nystrom_eig_psd(factors_of(Matrix::Zero(6, 6), {0, 2}));
  CHECK(zero.rank() == 0);
  CHECK(zero.C.rows() == 6);
  Matrix indefinite = Matrix::Zero(4, 4);
  indefinite.diagonal() << 1, -1, 2, 3;
  CHECK_THROWS_AS(nystrom_eig_psd(factors_of(indefinite, {0, 1, 2, 3})), UsageError);
}

TEST_CASE("indefinite decomposition agrees with the psd one on psd input") {
  std::mt19937_64 rng(25);
  const Matrix x = testing::random_matrix(rng, 30, 10);
  const NystromFactors f = factors_of(x * x.transpose(), select_landmarks(30, 6, 4));
  const EigenModel a = nystrom_eig_psd(f);
  const EigenModel b = nystrom_eig_indefinite(f);
  REQUIRE(a.rank() == b.rank());
  CHECK((a.A - b.A).cwiseAbs().maxCoeff() <= 1e-8 * a.A(0));
}

TEST_CASE("analytic rank-two indefinite spectrum") {
  Vector u = Vector::Zero(6);
  Vector w = Vector::Zero(6);
  u << 1, 2, 0, 1, 0, 1;
  w << 2, -1, 1, 0, 1, 0;
  REQUIRE(u.dot(w) == 0.0);
  const Matrix k = u * u.transpose() - w * w.transpose();
  const EigenModel e = nystrom_eig_indefinite(factors_of(k, {0, 1}));
  REQUIRE(e.rank() == 2);
  CHECK(e.A(0) == doctest::Approx(u.squaredNorm()).epsilon(1e-8));
  CHECK(e.A(1) == doctest::Approx(-w.squaredNorm()).epsilon(1e-8));
  CHECK(e.signature == Signature{1, 1, 4});
}

TEST_CASE("colliding +l/-l pairs are separated") {
  std::mt19937_64 rng(26);
  for (int rep = 0; rep < 10; ++rep) {
    const Index n = 30;
    const Matrix q = testing::random_matrix(rng, n, 4).householderQr().householderQ() * Matrix::Identity(n, 4);
    Vector lam(4);
    lam << 3.0, -3.0, 1.5, -1.5;
    const Matrix k = q * lam.asDiagonal() * q.transpose();
    const NystromFactors f = factors_of(k, select_landmarks(n, 4 + rep % 3, rep));
    const EigenModel e = nystrom_eig_indefinite(f);
    REQUIRE(e.rank() == 4);
    Vector expected(4);
    expected << 3.0, 1.5, -1.5, -3.0;
    CHECK((e.A - expected).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((e.C * e.A.asDiagonal() * e.C.transpose() - k).norm() <= 1e-8 * k.norm());
    // each eigenvector is a true eigenvector, not a +/- mixture
    for (Index j = 0; j < 4; ++j) CHECK((k * e.C.col(j) - e.A(j) * e.C.col(j)).norm() <= 1e-8 * 3.0);
  }
}

TEST_CASE("indefinite decomposition matches the dense oracle") {
  std::mt19937_64 rng(27);
  for (int rep = 0; rep < 15; ++rep) {
    const Index n = 25 + 3 * rep;
    const Index m = 4 + rep % 10;
    const Matrix k = testing::random_symmetric(rng, n);
    const NystromFactors f = factors_of(k, select_landmarks(n, m, rep));
    const Matrix khat = reconstruct(f);
    const EigenModel e = nystrom_eig_indefinite(f);
    CHECK((e.C.transpose() * e.C - Matrix::Identity(e.rank(), e.rank())).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((e.C * e.A.asDiagonal() * e.C.transpose() - khat).norm() <= 1e-6 * khat.norm());

    const EigenPair dense = sym_eig(khat);
    const double top = dense.values.cwiseAbs().maxCoeff();
    std::vector<Index> nonzero;
    for (Index i = 0; i < n; ++i)
      if (std::abs(dense.values(i)) > 1e-7 * top) nonzero.push_back(i);
    REQUIRE(static_cast<Index>(nonzero.size()) == e.rank());
    Matrix dense_vecs(n, e.rank());
    for (Index j = 0; j < e.rank(); ++j) {
      CHECK(std::abs(e.A(j) - dense.values(nonzero[std::size_t(j)])) <= 1e-6 * std::abs(dense.values(nonzero[std::size_t(j)])) + 1e-12 * top);
      dense_vecs.col(j) = dense.vectors.col(nonzero[std::size_t(j)]);
    }
    CHECK(projector_distance(e.C, dense_vecs) <= 1e-5);
  }
}

TEST_CASE("ball data at full rank recovers the negative spectrum") {
  BallConfig c;
  c.seed = 3;
  const BallDataset d = ball_dataset(c);
  const Matrix s = double_center(d.dissimilarities).values;
  const NystromFactors f = factors_of(s, select_landmarks(600, 600, 1));
  const EigenModel e = nystrom_eig_indefinite(f);
  const Vector dense = sym_eigenvalues(s);
  CHECK(e.signature.q > 0);
  const double top = dense.cwiseAbs().maxCoeff();
  Index p = 0, q = 0;
  for (Index i = 0; i < dense.size(); ++i) {
    if (dense(i) > 1e-6 * top) ++p;
    if (dense(i) < -1e-6 * top) ++q;
  }
  Index ep = 0, eq = 0;
  for (Index i = 0; i < e.rank(); ++i) {
    if (e.A(i) > 1e-6 * top) ++ep;
    if (e.A(i) < -1e-6 * top) ++eq;
  }
  CHECK(ep == p);
  CHECK(eq == q);
  // largest and most negative eigenvalues agree
  CHECK(e.A(0) == doctest::Approx(dense(0)).epsilon(1e-8));
  CHECK(e.A(e.rank() - 1) == doctest::Approx(dense(dense.size() - 1)).epsilon(1e-6));
}

TEST_CASE("landmark double centering at full rank") {
  std::mt19937_64 rng(28);
  const Matrix x = testing::random_matrix(rng, 20, 3);
  const Matrix d = testing::squared_distances(x);
  const IndexList all = select_landmarks(20, 20, 5);
  Matrix d_cross(20, 20), d_core(20, 20);
  for (Index j = 0; j < 20; ++j) {
    for (Index i = 0; i < 20; ++i) d_cross(i, j) = d(i, all[std::size_t(j)]);
    for (Index i = 0; i < 20; ++i) d_core(i, j) = d(all[std::size_t(i)], all[std::size_t(j)]);
  }
  const CenteredBlocks c = nystrom_double_center(d_cross, d_core);
  const Matrix s = testing::centered_gram(x);
  for (Index i = 0; i < 20; ++i)
    for (Index j = 0; j < 20; ++j) {
      CHECK(std::abs(c.core(i, j) - s(all[std::size_t(i)], all[std::size_t(j)])) <= 1e-9 * s.cwiseAbs().maxCoeff());
      CHECK(std::abs(c.cross(i, j) - s(i, all[std::size_t(j)])) <= 1e-9 * s.cwiseAbs().maxCoeff());
    }
  CHECK(c.stats.n == 20);
}

TEST_CASE("landmark double centering of zero dissimilarities") {
  const CenteredBlocks c = nystrom_double_center(Matrix::Zero(8, 3), Matrix::Zero(3, 3));
  CHECK(c.core.isZero(0.0));
  CHECK(c.cross.isZero(0.0));
  CHECK(c.stats.s.isZero(0.0));
  CHECK(c.stats.g == 0.0);
}

TEST_CASE("rank-limited dissimilarities are centered exactly") {
  std::mt19937_64 rng(29);
  // points on a line: squared distances have rank 3
  const Matrix x = testing::random_matrix(rng, 30, 1);
  const Matrix d = testing::squared_distances(x);
  for (Index m : {3, 4, 7}) {
    const IndexList l = select_landmarks(30, m, static_cast<std::uint64_t>(m));
    Matrix d_cross(30, m), d_core(m, m);
    for (Index j = 0; j < m; ++j) {
      for (Index i = 0; i < 30; ++i) d_cross(i, j) = d(i, l[std::size_t(j)]);
      for (Index i = 0; i < m; ++i) d_core(i, j) = d(l[std::size_t(i)], l[std::size_t(j)]);
    }
    const CenteredBlocks c = nystrom_double_center(d_cross, d_core);
    const NystromFactors f = make_factors(ProximityKind::Similarity, c.cross, c.core, l);
    const Matrix s = testing::centered_gram(x);
    CHECK(testing::rel_fro(reconstruct(f), s) <= 1e-7);
  }
}

TEST_CASE("centering summands against dense double centering") {
  std::mt19937_64 rng(30);
  const Matrix x = testing::random_matrix(rng, 40, 6);
  Matrix d = testing::squared_distances(x);
  // break Euclidean structure so the Nystrom approximation of D is not exact
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (Index j = 0; j < 40; ++j)
    for (Index i = 0; i < j; ++i) d(i, j) = d(j, i) = d(i, j) + u(rng);
  const Index m = 8;
  const IndexList l = select_landmarks(40, m, 9);
  Matrix d_cross(40, m), d_core(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < 40; ++i) d_cross(i, j) = d(i, l[std::size_t(j)]);
    for (Index i = 0; i < m; ++i) d_core(i, j) = d(l[std::size_t(i)], l[std::size_t(j)]);
  }
  const CenteredBlocks c = nystrom_double_center(d_cross, d_core);
  const CenteringSummands ny = nystrom_cross_summands(d_cross, c);
  const CenteringSummands dense = dense_cross_summands(d, l);
  const double scale = d.cwiseAbs().maxCoeff();
  CHECK((ny.dissimilarity - dense.dissimilarity).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ny.column_means - dense.column_means).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  // row means are exact on landmark rows, where D^ reproduces D
  for (Index a = 0; a < m; ++a) {
    const Index i = l[std::size_t(a)];
    CHECK(std::abs(ny.row_means(i, 0) - dense.row_means(i, 0)) <= 1e-9 * scale);
  }
  // the summands reassemble S_cross
  const Matrix assembled = -0.5 * (ny.dissimilarity - ny.column_means - ny.row_means + ny.grand_mean);
  CHECK((assembled - c.cross).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("center_rows reproduces training rows and checks sizes") {
  std::mt19937_64 rng(31);
  const Matrix x = testing::random_matrix(rng, 25, 2);
  const Matrix d = testing::squared_distances(x);
  const IndexList l = select_landmarks(25, 5, 1);
  Matrix d_cross(25, 5), d_core(5, 5);
  for (Index j = 0; j < 5; ++j) {
    for (Index i = 0; i < 25; ++i) d_cross(i, j) = d(i, l[std::size_t(j)]);
    for (Index i = 0; i < 5; ++i) d_core(i, j) = d(l[std::size_t(i)], l[std::size_t(j)]);
  }
  const CenteredBlocks c = nystrom_double_center(d_cross, d_core);
  CHECK((center_rows(d_cross.middleRows(4, 3), c.stats) - c.cross.middleRows(4, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(center_rows(Matrix::Zero(2, 4), c.stats), UsageError);
}

TEST_CASE("landmark double centering touches O(N) entries") {
  BallConfig c;
  c.n_per_class = 100;
  auto geometry = std::make_shared<const BallGeometry>(ball_geometry(c));
  BallSource src(geometry);
  CountingSource counted(src);
  const IndexList l = select_landmarks(200, 10, 1);
  const NystromFactors raw = nystrom_factors(counted, l);
  nystrom_double_center(raw.cross, raw.core);
  CHECK(counted.entries() == 200u * 10u);
}
