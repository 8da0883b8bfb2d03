#include <doctest.h>

#include <nyprox/corrections.hpp>
#include <nyprox/dataio.hpp>
#include <nyprox/pipeline.hpp>
#include <nyprox/transforms.hpp>

#include "test_support.hpp"

#include <cstring>

using namespace nyprox;

namespace {

NystromFactors factors_of(const Matrix& k, const IndexList& landmarks) {
  const ProximityMatrix pm{ProximityKind::Similarity, k};
  return nystrom_factors(DenseSource(pm), landmarks);
}

CorrectedModel model_of(const Matrix& k, const IndexList& landmarks, CorrectionMode mode,
                        CoreRule rule = CoreRule::Pullback) {
  const NystromFactors f = factors_of(k, landmarks);
  CorrectionOptions o;
  o.mode = mode;
  o.rule = rule;
  return build_corrected_model(nystrom_eig_indefinite(f, o.tol), f, o);
}

IndexList all_of(Index n) {
  IndexList l(static_cast<std::size_t>(n));
  std::iota(l.begin(), l.end(), Index{0});
  return l;
}

// Dense correction of a given decomposition: C diag(A*) C^T.
Matrix dense_corrected(const EigenModel& e, CorrectionMode mode) {
  return e.C * correct_eigenvalues(e.A, mode).asDiagonal() * e.C.transpose();
}

}  // namespace

TEST_CASE("eigenvalue corrections") {
  Vector v(3);
  v << 3, -2, 0;
  CHECK(correct_eigenvalues(v, CorrectionMode::Flip) == (Vector(3) << 3, 2, 0).finished());
  CHECK(correct_eigenvalues(v, CorrectionMode::Clip) == (Vector(3) << 3, 0, 0).finished());
  CHECK(correct_eigenvalues(v, CorrectionMode::Shift) == (Vector(3) << 5, 0, 2).finished());
  CHECK(correct_eigenvalues(v, CorrectionMode::None) == v);
  Vector pos(2);
  pos << 2, 1;
  CHECK(correct_eigenvalues(pos, CorrectionMode::Shift) == pos);
  CHECK(correct_eigenvalues(Vector(0), CorrectionMode::Shift).size() == 0);
}

TEST_CASE("correction mode names") {
  for (auto m : {CorrectionMode::None, CorrectionMode::Clip, CorrectionMode::Flip, CorrectionMode::Shift})
    CHECK(parse_correction_mode(to_string(m)) == m);
  CHECK_THROWS_AS(parse_correction_mode("square"), UsageError);
}

TEST_CASE("mode none reproduces the uncorrected approximation") {
  std::mt19937_64 rng(40);
  const Matrix k = testing::random_symmetric(rng, 30);
  const IndexList l = select_landmarks(30, 9, 1);
  const CorrectedModel model = model_of(k, l, CorrectionMode::None);
  const Matrix khat = reconstruct(factors_of(k, l));
  CHECK(testing::rel_fro(corrected_matrix(model), khat) <= 1e-8);
  CHECK_FALSE(model.has_feature_map);
  CHECK_THROWS_AS(model.features(), UsageError);
}

TEST_CASE("clipping a psd approximation changes nothing") {
  std::mt19937_64 rng(41);
  const Matrix x = testing::random_matrix(rng, 30, 10);
  const Matrix k = x * x.transpose();
  const IndexList l = select_landmarks(30, 7, 2);
  const CorrectedModel model = model_of(k, l, CorrectionMode::Clip);
  CHECK(testing::rel_fro(corrected_matrix(model), reconstruct(factors_of(k, l))) <= 1e-8);
}

TEST_CASE("flip of the analytic rank-two case") {
  Vector u(6), w(6);
  u << 1, 2, 0, 1, 0, 1;
  w << 2, -1, 1, 0, 1, 0;
  const Matrix k = u * u.transpose() - w * w.transpose();
  const CorrectedModel model = model_of(k, {0, 1}, CorrectionMode::Flip);
  const Matrix expected = u * u.transpose() + w * w.transpose();
  CHECK(testing::rel_fro(corrected_matrix(model), expected) <= 1e-6);
  CHECK(model.has_feature_map);
}

TEST_CASE("corrected blocks match the dense corrected decomposition") {
  std::mt19937_64 rng(42);
  for (auto mode : {CorrectionMode::None, CorrectionMode::Clip, CorrectionMode::Flip, CorrectionMode::Shift}) {
    const Matrix k = testing::random_symmetric(rng, 35);
    const IndexList l = select_landmarks(35, 10, 3);
    const NystromFactors f = factors_of(k, l);
    const EigenModel e = nystrom_eig_indefinite(f);
    CorrectionOptions o;
    o.mode = mode;
    const CorrectedModel model = build_corrected_model(e, f, o);
    const Matrix reference = dense_corrected(e, mode);
    const IndexList all = all_of(35);
    CHECK(testing::rel_fro(corrected_block(model, all, all), reference) <= 1e-6);
    // the landmark block equals C_mm A* C_mm^T
    CHECK(testing::rel_fro(corrected_block(model, l, l), (f.core * e.coeff) *
                                                             correct_eigenvalues(e.A, mode).asDiagonal() *
                                                             (f.core * e.coeff).transpose()) <= 1e-6);
  }
}

TEST_CASE("landmark-inverse core agrees with the pullback core for flip") {
  std::mt19937_64 rng(43);
  const Matrix k = testing::random_symmetric(rng, 30);
  const IndexList l = select_landmarks(30, 8, 4);
  const CorrectedModel a = model_of(k, l, CorrectionMode::Flip, CoreRule::Pullback);
  const CorrectedModel b = model_of(k, l, CorrectionMode::Flip, CoreRule::LandmarkInverse);
  CHECK(testing::rel_fro(corrected_matrix(b), corrected_matrix(a)) <= 1e-6);
  const CorrectedModel none_a = model_of(k, l, CorrectionMode::None, CoreRule::Pullback);
  const CorrectedModel none_b = model_of(k, l, CorrectionMode::None, CoreRule::LandmarkInverse);
  CHECK(testing::rel_fro(corrected_matrix(none_b), corrected_matrix(none_a)) <= 1e-6);
}

TEST_CASE("psd guarantee for clip and flip") {
  std::mt19937_64 rng(44);
  for (int rep = 0; rep < 10; ++rep) {
    const Index n = 40 + 10 * rep;
    const Matrix k = testing::random_symmetric(rng, n);
    for (auto mode : {CorrectionMode::Clip, CorrectionMode::Flip}) {
      const CorrectedModel model = model_of(k, select_landmarks(n, 5 + rep, rep), mode);
      const Matrix s = corrected_matrix(model);
      const Vector ev = testing::reference_eigenvalues(s);
      CHECK(ev(ev.size() - 1) >= -1e-8 * ev(0));
      for (Index i = 0; i < n; ++i) CHECK(s(i, i) >= -1e-8 * s.diagonal().cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("feature map identity") {
  std::mt19937_64 rng(45);
  const Matrix k = testing::random_symmetric(rng, 40);
  for (auto rule : {CoreRule::Pullback, CoreRule::LandmarkInverse}) {
    for (auto mode : {CorrectionMode::Clip, CorrectionMode::Flip, CorrectionMode::Shift}) {
      const CorrectedModel model = model_of(k, select_landmarks(40, 12, 5), mode, rule);
      if (!model.has_feature_map) continue;
      const Matrix f = model.features();
      const IndexList all = all_of(40);
      const Matrix block = corrected_block(model, all, all);
      CHECK((f * f.transpose() - block).cwiseAbs().maxCoeff() <= 1e-8 * block.cwiseAbs().maxCoeff());
    }
  }
}

TEST_CASE("full-rank model equals the dense pipeline") {
  std::mt19937_64 rng(46);
  const Matrix k = testing::random_symmetric(rng, 40);
  const ProximityMatrix pm{ProximityKind::Similarity, k};
  for (auto mode : {CorrectionMode::Clip, CorrectionMode::Flip}) {
    const CorrectedModel model = model_of(k, select_landmarks(40, 40, 6), mode);
    CHECK(testing::rel_fro(corrected_matrix(model), dense_corrected_similarity(pm, mode)) <= 1e-6);
  }
  const Matrix x = testing::random_matrix(rng, 40, 40);
  const Matrix psd = x * x.transpose();
  const CorrectedModel none = model_of(psd, select_landmarks(40, 40, 7), CorrectionMode::None);
  CHECK(testing::rel_fro(corrected_matrix(none), psd) <= 1e-8);
}

TEST_CASE("corrected dissimilarities") {
  std::mt19937_64 rng(47);
  const Matrix x = testing::random_matrix(rng, 20, 20);
  const Matrix s = x * x.transpose();
  const CorrectedModel model = model_of(s, select_landmarks(20, 20, 8), CorrectionMode::None);
  const IndexList all = all_of(20);
  const Matrix d = corrected_to_dissimilarity(model, all, all);
  const ProximityMatrix ref = sim_to_dis({ProximityKind::Similarity, s});
  CHECK((d - ref.values).cwiseAbs().maxCoeff() <= 1e-8 * ref.values.cwiseAbs().maxCoeff());
  for (Index i = 0; i < 20; ++i) CHECK(d(i, i) == 0.0);

  const CorrectedDissimilarityOracle oracle(model);
  for (Index i = 0; i < 20; i += 3)
    for (Index j = 0; j < 20; j += 2) CHECK(oracle(i, j) == doctest::Approx(d(i, j)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("flip-corrected ball distances are positive") {
  BallConfig c;
  c.n_per_class = 60;
  c.seed = 4;
  const BallDataset data = ball_dataset(c);
  const IndexList l = select_landmarks(120, 40, 3);
  CorrectionOptions o;
  o.mode = CorrectionMode::Flip;
  const CorrectedModel model = fit_corrected_model(DenseSource(data.dissimilarities), l, o);
  const IndexList all = all_of(120);
  const Matrix d = corrected_to_dissimilarity(model, all, all);
  for (Index i = 0; i < 120; ++i)
    for (Index j = 0; j < 120; ++j)
      if (i != j) CHECK(d(i, j) > 0.0);
}

TEST_CASE("model and factor files round trip") {
  std::mt19937_64 rng(48);
  const auto dir = testing::scratch_dir("corrections");
  const Matrix x = testing::random_matrix(rng, 30, 3);
  const ProximityMatrix d{ProximityKind::SquaredDissimilarity, testing::squared_distances(x)};
  CorrectionOptions o;
  o.mode = CorrectionMode::Clip;
  const CorrectedModel model = fit_corrected_model(DenseSource(d), select_landmarks(30, 6, 1), o);
  REQUIRE(model.stats);
  save_model(model, dir / "m.pcm", "{\"seed\":1}");
  std::string prov;
  const CorrectedModel back = load_model(dir / "m.pcm", &prov);
  CHECK(prov == "{\"seed\":1}");
  CHECK(back.source_kind == ProximityKind::SquaredDissimilarity);
  CHECK(back.mode == CorrectionMode::Clip);
  CHECK(back.landmarks == model.landmarks);
  CHECK(back.cross_ref == model.cross_ref);
  CHECK(back.w_star == model.w_star);
  CHECK(back.feature_factor == model.feature_factor);
  CHECK(back.has_feature_map == model.has_feature_map);
  REQUIRE(back.stats);
  CHECK(back.stats->s == model.stats->s);
  CHECK(back.stats->g == model.stats->g);
  CHECK(back.stats->n == model.stats->n);
  CHECK(back.stats->core_pinv_s == model.stats->core_pinv_s);

  const NystromFactors f = factors_of(testing::random_symmetric(rng, 12), {1, 4, 9});
  save_factors(f, dir / "f.pnf");
  const NystromFactors g = load_factors(dir / "f.pnf");
  CHECK(g.landmarks == f.landmarks);
  CHECK(g.cross == f.cross);
  CHECK(g.core == f.core);
  CHECK(g.core_pinv == f.core_pinv);

  CHECK_THROWS_AS(load_model(dir / "f.pnf"), DataError);
  std::filesystem::resize_file(dir / "m.pcm", 40);
  CHECK_THROWS_AS(load_model(dir / "m.pcm"), DataError);
}
