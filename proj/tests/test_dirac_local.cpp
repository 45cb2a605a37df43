#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirackit/dirac_local.hpp"
#include "dirackit/lattice.hpp"
#include "dirackit/rng.hpp"
#include "dirackit/soldering.hpp"

using namespace dirackit;

namespace {
const Mat kChi2 = (Mat(2, 2) << 1, 0, 0, -1).finished();

Mat random_odd_phi(Rng& rng, const Mat& chi) {
  Mat phi = rng.random_matrix(chi.rows(), chi.cols());
  return 0.5 * (phi - chi * phi * chi);
}
}  // namespace

TEST_CASE("soldering form is a right inverse of the contraction") {
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {4, 0}, {3, 1}}) {
    GammaRep rep = build_gamma_rep(Signature(p, q), +1);
    SolderingForm theta = make_soldering_form(rep, 2);
    Rng rng(19);
    Mat z = rng.random_matrix(theta.fiber_dim(), theta.fiber_dim());
    Mat back = gamma_contract(rep, 2, ext_theta(theta, z));
    CHECK(max_abs(back - z) < 1e-12 * std::max(1.0, max_abs(z)));

    // applied to the image of a contraction it recovers the contraction
    std::vector<Mat> t;
    for (int mu = 0; mu < rep.n(); ++mu)
      t.push_back(rng.random_matrix(theta.fiber_dim(), theta.fiber_dim()));
    Mat zt = gamma_contract(rep, 2, t);
    Mat recovered = soldering_contract(theta, ext_theta(theta, zt));
    CHECK(max_abs(recovered - zt) < 1e-12 * std::max(1.0, max_abs(zt)));
  }
}

TEST_CASE("assemble_omega: zero data gives zero, gauge-only gives 1 (x) A") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  LocalDiracData d = make_local_data(rep, 2, kChi2);
  std::vector<Mat> om = assemble_omega(d);
  for (const Mat& o : om) CHECK(max_abs(o) == 0.0);

  Rng rng(23);
  for (int mu = 0; mu < 2; ++mu) d.gauge[std::size_t(mu)] = rng.random_anti_hermitian(2);
  om = assemble_omega(d);
  for (int mu = 0; mu < 2; ++mu)
    CHECK(max_abs(om[std::size_t(mu)] -
                  kron(Mat::Identity(2, 2), d.gauge[std::size_t(mu)])) < 1e-14);
}

TEST_CASE("simple-type data passes the parity check") {
  Rng rng(29);
  GammaRep rep = build_gamma_rep(Signature(3, 1), +1);
  RMat g = RMat(rep.metric_diag.asDiagonal());
  Mat phi = random_odd_phi(rng, kChi2);
  LocalDiracData d = make_simple_type(rep, 2, kChi2, phi, g);
  CHECK_NOTHROW(assemble_omega(d));

  // even phi must be rejected
  Mat even = rng.random_matrix(2, 2);
  even = 0.5 * (even + kChi2 * even * kChi2);
  CHECK_THROWS_AS(make_simple_type(rep, 2, kChi2, even, g), not_simple_type);
}

TEST_CASE("make_simple_type satisfies the contraction identity") {
  Rng rng(31);
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {4, 0}, {3, 1}}) {
    GammaRep rep = build_gamma_rep(Signature(p, q), +1);
    RMat g = RMat(rep.metric_diag.asDiagonal());
    Mat phi = random_odd_phi(rng, kChi2);
    LocalDiracData d = make_simple_type(rep, 2, kChi2, phi, g);
    std::vector<Mat> om = dirac_form_part(d);
    Mat contraction = gamma_contract(rep, 2, om);
    CHECK(max_abs(contraction - kron(rep.chirality, phi)) < 1e-12);
    CHECK(check_simple_type(om, rep, 2, g).is_simple);
    Mat back = extract_phi(om, rep, 2, kChi2, g);
    CHECK(max_abs(back - phi) < 1e-12);
  }
}

TEST_CASE("phi = 0 gives zero theta and extract recovers zero") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  RMat g = RMat(rep.metric_diag.asDiagonal());
  LocalDiracData d = make_simple_type(rep, 2, kChi2, Mat::Zero(2, 2), g);
  std::vector<Mat> om = dirac_form_part(d);
  for (const Mat& o : om) CHECK(max_abs(o) < 1e-15);
  CHECK(max_abs(extract_phi(om, rep, 2, kChi2, g)) < 1e-13);
}

TEST_CASE("extraction is linear in the data") {
  Rng rng(37);
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  RMat g = RMat(rep.metric_diag.asDiagonal());
  Mat phi = random_odd_phi(rng, kChi2);
  std::vector<Mat> om = dirac_form_part(make_simple_type(rep, 2, kChi2, phi, g));
  for (Mat& o : om) o *= 2.5;
  Mat back = extract_phi(om, rep, 2, kChi2, g);
  CHECK(max_abs(back - 2.5 * phi) < 1e-12);
}

TEST_CASE("zero omega is simple type with zero residual") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  RMat g = RMat(rep.metric_diag.asDiagonal());
  std::vector<Mat> om(2, Mat::Zero(4, 4));
  SimpleTypeCheck chk = check_simple_type(om, rep, 2, g);
  CHECK(chk.is_simple);
  CHECK(chk.residual == 0.0);
}

TEST_CASE("symmetric gamma combination with trace is not simple type") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  RMat g = RMat(rep.metric_diag.asDiagonal());
  // omega_mu = gamma^nu c_{nu mu} with generic symmetric c
  Mat c = (Mat(2, 2) << 1.1, 0.4, 0.4, -0.3).finished();
  std::vector<Mat> om;
  for (int mu = 0; mu < 2; ++mu) {
    Mat o = Mat::Zero(2, 2);
    for (int nu = 0; nu < 2; ++nu) o += c(nu, mu) * rep.gamma[nu];
    om.push_back(o);
  }
  SimpleTypeCheck chk = check_simple_type(om, rep, 1, g);
  CHECK_FALSE(chk.is_simple);
  CHECK(chk.residual > 1e-3);
  CHECK_THROWS_AS(extract_phi(om, rep, 1, Mat::Identity(1, 1), g), not_simple_type);
}

TEST_CASE("solution space dimensions and non-chiral collapse") {
  GammaRep rep2 = build_gamma_rep(Signature(2, 0), +1);
  RMat g2 = RMat(rep2.metric_diag.asDiagonal());
  auto basis = simple_type_solution_space(rep2, 2, kChi2, g2);
  CHECK(int(basis.size()) == 2);

  GammaRep rep4 = build_gamma_rep(Signature(3, 1), +1);
  RMat g4 = RMat(rep4.metric_diag.asDiagonal());
  auto basis4 = simple_type_solution_space(rep4, 1, Mat::Identity(1, 1), g4);
  CHECK(basis4.empty());

  // every basis element passes the simple-type check
  SolderingForm theta = make_soldering_form(rep2, 2);
  for (const Mat& z : basis) {
    auto chk = check_simple_type(ext_theta(theta, z), rep2, 2, g2, 1e-8);
    CHECK(chk.is_simple);
  }
}

TEST_CASE("analytic potential: theta-free data reduces to the curvature term") {
  GammaRep rep = build_gamma_rep(Signature(3, 1), +1);
  LocalDiracData d = make_local_data(rep, 2, kChi2);
  d.r_m = 0.0;
  CHECK(dirac_potential_analytic(d) == 0.0);
  d.r_m = 1.7;
  CHECK(dirac_potential_analytic(d) == doctest::Approx(0.5 * 8 * 1.7));
}

TEST_CASE("analytic potential matches the constant-coefficient remainder") {
  Rng rng(41);
  for (auto [p, q] : {std::pair{2, 0}, {1, 1}, {4, 0}, {3, 1}, {2, 2}}) {
    for (int sign : {+1, -1}) {
      GammaRep rep = build_gamma_rep(Signature(p, q), sign);
      RMat g = RMat(rep.metric_diag.asDiagonal());
      Mat phi = random_odd_phi(rng, kChi2);
      LocalDiracData d = make_simple_type(rep, 2, kChi2, phi, g);
      std::vector<Mat> om = dirac_form_part(d);
      const double v_formula = dirac_potential_analytic(d);
      const double v_exact = constant_blw_remainder(rep, 2, om).trace().real();
      CHECK(v_formula == doctest::Approx(v_exact).epsilon(1e-10));
      // simple type: the remainder is 2^k tr(phi^2)
      const double expect = double(rep.dim()) * (phi * phi).trace().real();
      CHECK(v_exact == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("degenerate metric is rejected") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  RMat g = RMat::Zero(2, 2);
  g(0, 0) = 1.0;
  CHECK_THROWS_AS(gamma_for_metric(rep, g), invalid_signature);
}

TEST_CASE("general metric gammas satisfy the metric relations") {
  Rng rng(43);
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  RMat a = RMat::Random(2, 2);
  RMat g = a * a.transpose() + 0.5 * RMat::Identity(2, 2);
  std::vector<Mat> gam = gamma_for_metric(rep, g);
  RMat ginv = g.inverse();
  for (int mu = 0; mu < 2; ++mu)
    for (int nu = 0; nu < 2; ++nu)
      CHECK(max_abs(anticommutator(gam[std::size_t(mu)], gam[std::size_t(nu)]) -
                    2.0 * ginv(mu, nu) * Mat::Identity(2, 2)) < 1e-12);
  // simple-type round trip in a curved chart
  Mat phi = random_odd_phi(rng, kChi2);
  LocalDiracData d = make_simple_type(rep, 2, kChi2, phi, g);
  std::vector<Mat> om = dirac_form_part(d);
  CHECK(check_simple_type(om, rep, 2, g).is_simple);
  CHECK(max_abs(extract_phi(om, rep, 2, kChi2, g) - phi) < 1e-11);
}
