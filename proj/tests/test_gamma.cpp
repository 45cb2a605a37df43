#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirackit/gamma.hpp"
#include "dirackit/rng.hpp"

using namespace dirackit;

TEST_CASE("euclidean n=2 anticommutators") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  CHECK(rep.dim() == 2);
  CHECK(max_abs(anticommutator(rep.gamma[0], rep.gamma[1])) < 1e-14);
  CHECK(max_abs(rep.gamma[0] * rep.gamma[0] - Mat::Identity(2, 2)) < 1e-14);
  CHECK(max_abs(rep.gamma[1] * rep.gamma[1] - Mat::Identity(2, 2)) < 1e-14);
}

TEST_CASE("split signature squares") {
  GammaRep rep = build_gamma_rep(Signature(1, 1), +1);
  CHECK(max_abs(rep.gamma[0] * rep.gamma[0] - Mat::Identity(2, 2)) < 1e-14);
  CHECK(max_abs(rep.gamma[1] * rep.gamma[1] + Mat::Identity(2, 2)) < 1e-14);
}

TEST_CASE("lorentzian (3,1) has fiber dimension 4") {
  GammaRep rep = build_gamma_rep(Signature(3, 1), +1);
  CHECK(rep.dim() == 4);
  CHECK(int(rep.gamma.size()) == 4);
  CHECK(clifford_residual(rep) < 1e-13);
}

TEST_CASE("both convention signs satisfy their relations") {
  for (int sign : {+1, -1}) {
    for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {3, 1}, {2, 2}, {4, 0}, {3, 3}}) {
      GammaRep rep = build_gamma_rep(Signature(p, q), sign);
      CHECK(clifford_residual(rep) < 1e-13);
    }
  }
}

TEST_CASE("invalid signatures are rejected") {
  CHECK_THROWS_AS(build_gamma_rep(Signature(1, 0)), invalid_signature);
  CHECK_THROWS_AS(build_gamma_rep(Signature(2, 1)), invalid_signature);
  CHECK_THROWS_AS(Signature(-1, 1), invalid_signature);
  CHECK_THROWS_AS(Signature(0, 0), invalid_signature);
}

TEST_CASE("empty blade is the identity") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  CHECK(max_abs(gamma_of_blade(rep, {}) - Mat::Identity(2, 2)) == 0.0);
}

TEST_CASE("top blade squares to minus one in euclidean n=2") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  Mat b = gamma_of_blade(rep, {0, 1});
  CHECK(max_abs(b * b + Mat::Identity(2, 2)) < 1e-14);
}

TEST_CASE("top blade is proportional to the chirality element") {
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {3, 1}, {2, 2}}) {
    GammaRep rep = build_gamma_rep(Signature(p, q), +1);
    std::vector<int> all(static_cast<std::size_t>(rep.n()));
    for (int i = 0; i < rep.n(); ++i) all[std::size_t(i)] = i;
    Mat top = gamma_of_blade(rep, all);
    CHECK(max_abs(rep.chirality_phase * top - rep.chirality) < 1e-13);
  }
}

TEST_CASE("bad blades are rejected") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  CHECK_THROWS_AS(gamma_of_blade(rep, {0, 0}), invalid_blade);
  CHECK_THROWS_AS(gamma_of_blade(rep, {1, 0}), invalid_blade);
  CHECK_THROWS_AS(gamma_of_blade(rep, {0, 5}), invalid_blade);
}

TEST_CASE("chirality: involution, traceless, anticommuting, balanced") {
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {3, 1}, {0, 4}}) {
    GammaRep rep = build_gamma_rep(Signature(p, q), +1);
    const Mat& gm = rep.chirality;
    const int d = rep.dim();
    CHECK(max_abs(gm * gm - Mat::Identity(d, d)) < 1e-13);
    CHECK(std::abs(gm.trace()) < 1e-12);
    for (int mu = 0; mu < rep.n(); ++mu)
      CHECK(max_abs(anticommutator(gm, rep.gamma[mu])) < 1e-13);
    Eigen::SelfAdjointEigenSolver<Mat> es(gm);
    int plus = 0;
    for (Eigen::Index i = 0; i < d; ++i) plus += es.eigenvalues()(i) > 0 ? 1 : 0;
    CHECK(plus == d / 2);
  }
}

TEST_CASE("grade projection reconstructs and is idempotent") {
  GammaRep rep = build_gamma_rep(Signature(3, 1), +1);
  Rng rng(7);
  const int d = rep.dim();

  Mat x = rng.random_matrix(d, d);
  Mat sum = Mat::Zero(d, d);
  for (int m = 0; m <= rep.n(); ++m) {
    Mat pm = grade_project(rep, x, m);
    sum += pm;
    CHECK(max_abs(grade_project(rep, pm, m) - pm) < 1e-12);
    for (int m2 = 0; m2 <= rep.n(); ++m2)
      if (m2 != m) CHECK(max_abs(grade_project(rep, pm, m2)) < 1e-12);
  }
  CHECK(max_abs(sum - x) < 1e-12);

  CHECK(max_abs(grade_project(rep, Mat::Identity(d, d), 0) - Mat::Identity(d, d)) < 1e-13);
  CHECK(max_abs(grade_project(rep, Mat::Identity(d, d), 2)) < 1e-13);
  Mat mix = rep.gamma[0] + rep.gamma[0] * rep.gamma[1];
  CHECK(max_abs(grade_project(rep, mix, 1) - rep.gamma[0]) < 1e-12);
  CHECK_THROWS_AS(grade_project(rep, x, 5), invalid_blade);
}

TEST_CASE("blade coefficients round-trip the matrix") {
  GammaRep rep = build_gamma_rep(Signature(2, 2), +1);
  Rng rng(11);
  Mat x = rng.random_matrix(rep.dim(), rep.dim());
  CliffordElement el = decompose(rep, x);
  Mat recon = Mat::Zero(rep.dim(), rep.dim());
  for (std::uint32_t b = 0; b < (1u << rep.n()); ++b)
    recon += el.blade_coeffs(b) * gamma_of_blade_mask(rep, b);
  CHECK(max_abs(recon - x) < 1e-12);
}
