#include "dirackit/pauli.hpp"

#include <Eigen/Eigenvalues>

#include "dirackit/rng.hpp"
#include "dirackit/soldering.hpp"

namespace dirackit {

DoubledFiber make_doubled_fiber(const GammaRep& rep, const Mat& chi) {
  const Eigen::Index nf = chi.rows();
  const Eigen::Index fd = rep.dim() * nf;
  const Mat id = Mat::Identity(fd, fd);
  DoubledFiber f;
  Mat gm = kron(rep.chirality, Mat::Identity(nf, nf));
  Mat ch = kron(Mat::Identity(rep.dim(), rep.dim()), chi);
  f.pi_r = 0.5 * (id + gm);
  f.pi_l = 0.5 * (id - gm);
  f.rho_r = 0.5 * (id + ch);
  f.rho_l = 0.5 * (id - ch);
  f.pi_ll = f.pi_l * f.rho_l;
  f.pi_rr = f.pi_r * f.rho_r;
  f.pi_rl = f.pi_r * f.rho_l;
  f.pi_lr = f.pi_l * f.rho_r;
  f.pi_plus = f.pi_rr + f.pi_ll;
  f.pi_minus = f.pi_rl + f.pi_lr;
  return f;
}

RealStructure make_real_structure(const GammaRep& rep, int nf, int eta) {
  const int n = rep.n();
  const int sd = rep.dim();
  // group-average projection onto intertwiners J: eta gamma^mu J = J conj(gamma^mu)
  Rng rng(0x9e3779b97f4a7c15ULL);
  Mat j_spin;
  bool found = false;
  for (int attempt = 0; attempt < 8 && !found; ++attempt) {
    Mat x = rng.random_matrix(sd, sd);
    Mat j = Mat::Zero(sd, sd);
    for (std::uint32_t b = 0; b < (1u << n); ++b) {
      Mat gb = gamma_of_blade_mask(rep, b);
      Mat gb_conj = Mat::Identity(sd, sd);
      for (int i = 0; i < n; ++i)
        if (b & (1u << i)) gb_conj = gb_conj * (double(eta) * rep.gamma[i].conjugate());
      j += gb.inverse() * x * gb_conj;
    }
    if (max_abs(j) < 1e-8) continue;
    // unitary polar factor
    Eigen::JacobiSVD<Mat> svd(j, Eigen::ComputeFullU | Eigen::ComputeFullV);
    j = svd.matrixU() * svd.matrixV().adjoint();
    double err = 0;
    for (int mu = 0; mu < n; ++mu)
      err = std::max(err, max_abs(double(eta) * rep.gamma[mu] * j - j * rep.gamma[mu].conjugate()));
    if (err < 1e-9) {
      j_spin = j;
      found = true;
    }
  }
  if (!found) throw std::runtime_error("no gamma intertwiner found");

  RealStructure rs;
  rs.eta = eta;
  rs.j = kron(j_spin, Mat::Identity(nf, nf));
  Mat jjbar = rs.j * rs.j.conjugate();
  rs.j_squared = jjbar(0, 0).real() > 0 ? +1 : -1;

  const Eigen::Index fd = rs.j.rows();
  rs.j_doubled = Mat::Zero(2 * fd, 2 * fd);
  rs.j_doubled.block(0, fd, fd, fd) = rs.j;
  rs.j_doubled.block(fd, 0, fd, fd) = rs.j.transpose();
  return rs;
}

Mat charge_conjugate(const Mat& d, const RealStructure& rs) {
  const Mat& j = d.rows() == rs.j.rows() ? rs.j : rs.j_doubled;
  return j * d.conjugate() * j.inverse();
}

namespace {

void split_chirality(const Vec& z, const Mat& grading, Vec& plus, Vec& minus) {
  plus = 0.5 * (z + grading * z);
  minus = 0.5 * (z - grading * z);
}

}  // namespace

Complex pairing(const Vec& z1, const Vec& z2, const Mat& grading, SignatureKind kind) {
  if (kind == SignatureKind::Euclidean) return z1.dot(z2);
  Vec p1, m1, p2, m2;
  split_chirality(z1, grading, p1, m1);
  split_chirality(z2, grading, p2, m2);
  return m1.dot(p2) + p1.dot(m2);
}

Complex fermionic_lagrangian(const Mat& d, const Vec& psi, const Mat& grading,
                             SignatureKind kind) {
  const Eigen::Index fd = d.rows();
  const Mat id = Mat::Identity(fd, fd);
  Mat pi_plus = 0.5 * (id + grading);
  Mat pi_minus = 0.5 * (id - grading);
  Mat odd_check = d - pi_minus * d * pi_plus - pi_plus * d * pi_minus;
  if (max_abs(odd_check) > kSolveTol * std::max(1.0, max_abs(d)))
    throw grading_error("fermionic lagrangian requires an odd operator");
  Vec dpsi = pi_minus * (d * (pi_plus * psi));
  return pairing(psi, dpsi, grading, kind);
}

Complex fermionic_lagrangian(const LatticeOperator& d, const Vec& psi, const Mat& grading,
                             SignatureKind kind) {
  const long sites = d.grid.sites();
  const int fiber = d.fiber;
  double vol = 1.0;
  for (int mu = 0; mu < d.grid.n; ++mu) vol *= d.grid.h[std::size_t(mu)];
  const Mat id = Mat::Identity(fiber, fiber);
  Mat pi_plus = 0.5 * (id + grading);
  Mat pi_minus = 0.5 * (id - grading);

  Vec proj = psi;
  for (long s = 0; s < sites; ++s)
    proj.segment(s * fiber, fiber) = pi_plus * psi.segment(s * fiber, fiber);
  Vec dpsi = d.mat * proj;
  Complex total = 0;
  for (long s = 0; s < sites; ++s) {
    Vec local = pi_minus * dpsi.segment(s * fiber, fiber);
    total += pairing(psi.segment(s * fiber, fiber), local, grading, kind);
  }
  return vol * total;
}

Mat build_pauli_dirac(const Mat& d, const GammaRep& rep, int nf,
                      const std::vector<std::vector<Mat>>& f) {
  const Eigen::Index fd = d.rows();
  Mat gf = Mat::Zero(fd, fd);
  const Mat id_int = Mat::Identity(nf, nf);
  for (int mu = 0; mu < rep.n(); ++mu)
    for (int nu = mu + 1; nu < rep.n(); ++nu) {
      const Mat& block = f[std::size_t(mu)][std::size_t(nu)];
      Mat full = block.rows() == fd ? block : kron(Mat::Identity(rep.dim(), rep.dim()), block);
      gf += kron(rep.gamma[mu] * rep.gamma[nu], id_int) * full;
    }
  Mat dp = Mat::Zero(2 * fd, 2 * fd);
  dp.block(0, 0, fd, fd) = d;
  dp.block(fd, fd, fd, fd) = d;
  dp.block(0, fd, fd, fd) = -gf;
  dp.block(fd, 0, fd, fd) = gf;
  return dp;
}

double pauli_cancellation_check(const Mat& d, const Mat& d_p, const Vec& psi,
                                const Mat& grading, SignatureKind kind) {
  const Eigen::Index fd = d.rows();
  Vec big(2 * fd);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  big.segment(0, fd) = inv_sqrt2 * psi;
  big.segment(fd, fd) = inv_sqrt2 * psi;
  Mat grading_doubled = Mat::Zero(2 * fd, 2 * fd);
  grading_doubled.block(0, 0, fd, fd) = grading;
  grading_doubled.block(fd, fd, fd, fd) = -grading;
  // plain quadratic forms (no chiral projection): the cancellation is an
  // identity of the doubled pairing itself
  Complex lhs = kind == SignatureKind::Euclidean
                    ? big.dot(d_p * big)
                    : pairing(big, d_p * big, grading_doubled, kind);
  Complex rhs = kind == SignatureKind::Euclidean ? psi.dot(d * psi)
                                                 : pairing(psi, d * psi, grading, kind);
  return std::abs(lhs - rhs);
}

double pauli_higgs_potential(const FermionModel& m, const GammaRep& rep, const Vec& phi) {
  const int n = rep.n();
  const int sd = rep.dim();
  const Mat id_int = Mat::Identity(m.nf, m.nf);
  Mat s = kron(rep.chirality, m.yukawa(phi));
  // omega of the simple-type configuration, flat chart, A = 0
  std::vector<Mat> omega;
  for (int mu = 0; mu < n; ++mu)
    omega.push_back(kron(rep.gamma_lower(mu), id_int) / double(n) * s);
  std::vector<Mat> w = dirac_connection_coefficients(rep, m.nf, omega);
  std::vector<std::vector<Mat>> f = connection_curvature_constant(w);

  // doubled zero-order term Z = I2diag (x) (gamma^mu omega_mu) + iota (x) gamma(F)
  const Eigen::Index fd = Eigen::Index(sd) * m.nf;
  Mat t = Mat::Zero(fd, fd);
  for (int mu = 0; mu < n; ++mu) t += kron(rep.gamma[mu], id_int) * omega[std::size_t(mu)];
  Mat gf = Mat::Zero(fd, fd);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu)
      gf += kron(rep.gamma[mu] * rep.gamma[nu], id_int) * f[std::size_t(mu)][std::size_t(nu)];
  Mat z = Mat::Zero(2 * fd, 2 * fd);
  z.block(0, 0, fd, fd) = t;
  z.block(fd, fd, fd, fd) = t;
  z.block(0, fd, fd, fd) = -gf;
  z.block(fd, 0, fd, fd) = gf;

  // V = tr(Z^2) - (sign/4) g_{mu nu} tr({gamma^mu, Z}{gamma^nu, Z}) on the
  // doubled fiber (the constant-coefficient BLW remainder trace)
  const double sign = rep.convention_sign;
  Complex v = (z * z).trace();
  for (int mu = 0; mu < n; ++mu) {
    Mat gmu = kron(Mat::Identity(2, 2), kron(rep.gamma[mu], id_int));
    Mat smu = anticommutator(gmu, z);
    v -= sign * 0.25 * rep.g(mu) * (smu * smu).trace();
  }
  return v.real();
}

namespace {

// exact quartic-polynomial fit on a symmetric sample; returns coefficients of
// 1, x, x^2, x^3, x^4 by least squares
RVec fit_poly4(const std::vector<double>& xs, const std::vector<double>& ys) {
  const Eigen::Index m = Eigen::Index(xs.size());
  RMat a(m, 5);
  RVec b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double x = xs[std::size_t(i)];
    a(i, 0) = 1;
    a(i, 1) = x;
    a(i, 2) = x * x;
    a(i, 3) = x * x * x;
    a(i, 4) = x * x * x * x;
    b(i) = ys[std::size_t(i)];
  }
  return a.colPivHouseholderQr().solve(b);
}

double poly_residual(const std::vector<double>& xs, const std::vector<double>& ys,
                     const RVec& c) {
  double worst = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    double fit = c(0) + c(1) * x + c(2) * x * x + c(3) * x * x * x + c(4) * x * x * x * x;
    worst = std::max(worst, std::abs(fit - ys[i]));
  }
  return worst;
}

}  // namespace

LagrangianSplit lagrangian_split(const FermionModel& m, const GammaRep& rep,
                                 double r_m_input) {
  LagrangianSplit out;
  const int n = rep.n();
  const int sd = rep.dim();
  const Eigen::Index fd = Eigen::Index(sd) * m.nf;
  const Mat id_int = Mat::Identity(m.nf, m.nf);
  const double sign = rep.convention_sign;

  // EH channel: analytic input r_M scaled by the potential's (N/2) coefficient
  out.eh_coefficient = 0.5 * double(2 * fd) * r_m_input;  // doubled fiber N = 2 * 2^k N_F

  auto doubled_potential = [&](const Mat& t, const Mat& gf) {
    Mat z = Mat::Zero(2 * fd, 2 * fd);
    z.block(0, 0, fd, fd) = t;
    z.block(fd, fd, fd, fd) = t;
    z.block(0, fd, fd, fd) = -gf;
    z.block(fd, 0, fd, fd) = gf;
    Complex v = (z * z).trace();
    for (int mu = 0; mu < n; ++mu) {
      Mat gmu = kron(Mat::Identity(2, 2), kron(rep.gamma[mu], id_int));
      Mat smu = anticommutator(gmu, z);
      v -= sign * 0.25 * rep.g(mu) * (smu * smu).trace();
    }
    return v.real();
  };

  Rng rng(fnv1a64("lagrangian-split"));

  // (i) pure-gauge family: F = s F0 with F0 a fixed anti-Hermitian two-form
  {
    std::vector<std::vector<Mat>> f0(std::size_t(n), std::vector<Mat>(std::size_t(n), Mat::Zero(m.nf, m.nf)));
    for (int mu = 0; mu < n; ++mu)
      for (int nu = mu + 1; nu < n; ++nu) {
        Mat b = Mat::Zero(m.nf, m.nf);
        for (int e = 0; e < m.dim_g(); ++e) b += rng.normal() * m.gen_f[std::size_t(e)];
        f0[std::size_t(mu)][std::size_t(nu)] = b;
        f0[std::size_t(nu)][std::size_t(mu)] = -b;
      }
    std::vector<double> xs, ys;
    for (double scale : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5}) {
      Mat gf = Mat::Zero(fd, fd);
      for (int mu = 0; mu < n; ++mu)
        for (int nu = mu + 1; nu < n; ++nu)
          gf += kron(rep.gamma[mu] * rep.gamma[nu], scale * f0[std::size_t(mu)][std::size_t(nu)]);
      xs.push_back(scale);
      ys.push_back(doubled_potential(Mat::Zero(fd, fd), gf));
    }
    RVec c = fit_poly4(xs, ys);
    out.ym_quadratic = c(2);
    RVec pure = c;
    pure(0) = pure(1) = pure(3) = pure(4) = 0;
    out.ym_fit_residual = poly_residual(xs, ys, pure);
  }

  // (ii) constant-Higgs family along the vacuum direction
  {
    Vec dirn = m.vacuum / m.vacuum.norm();
    std::vector<double> xs, ys;
    for (double t : {-1.5, -1.0, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 1.5})
      xs.push_back(t), ys.push_back(pauli_higgs_potential(m, rep, t * dirn));
    RVec c = fit_poly4(xs, ys);
    out.higgs_quadratic = c(2);
    out.higgs_quartic = c(4);
    RVec even = c;
    even(0) = even(1) = even(3) = 0;
    out.higgs_fit_residual = poly_residual(xs, ys, even);
    if (c(4) > 0 && c(2) < 0) out.higgs_min_radius = std::sqrt(-c(2) / (2 * c(4)));
  }

  // (iii) kinetic family: phi(x) = V + kappa ((x - x0) . e1) w on a small
  // lattice, Pauli-Dirac potential at the centered site x0; the gradient
  // enters through the twisting curvature of the Dirac connection, so V(x0)
  // is an exact quadratic polynomial in kappa
  {
    GammaRep rep2 = rep.n() == 2 ? rep : build_gamma_rep(Signature(2, 0), rep.convention_sign);
    Grid grid({8, 8}, {1.0, 1.0});
    const int sd2 = rep2.dim();
    const Eigen::Index fd2 = Eigen::Index(sd2) * m.nf;
    const Mat id2 = Mat::Identity(m.nf, m.nf);
    const Mat iota = (Mat(2, 2) << 0, -1, 1, 0).finished();
    std::vector<Mat> principal;
    for (int mu = 0; mu < 2; ++mu)
      principal.push_back(kron(Mat::Identity(2, 2), kron(rep2.gamma[mu], id2)));

    Vec w = rng.random_vector(m.nh);
    const long probe = grid.index({4, 4});
    std::vector<double> xs, ys;
    for (double kappa : {-0.2, -0.1, -0.05, 0.0, 0.05, 0.1, 0.2}) {
      auto omega_at = [&](long s) {
        std::vector<int> c = grid.coord(s);
        Vec phi = m.vacuum + kappa * (double(c[0]) - 4.0) * grid.h[0] * w;
        Mat sm = kron(rep2.chirality, m.yukawa(phi));
        std::vector<Mat> om;
        for (int mu = 0; mu < 2; ++mu)
          om.push_back(kron(rep2.gamma_lower(mu), id2) / 2.0 * sm);
        return om;
      };
      auto w_at = [&](long s) { return dirac_connection_coefficients(rep2, m.nf, omega_at(s)); };
      auto z_at = [&](long s) {
        std::vector<Mat> om = omega_at(s);
        Mat t = Mat::Zero(fd2, fd2);
        for (int mu = 0; mu < 2; ++mu) t += kron(rep2.gamma[mu], id2) * om[std::size_t(mu)];
        std::vector<std::vector<Mat>> f = lattice_connection_curvature(grid, w_at, s);
        Mat gf = Mat::Zero(fd2, fd2);
        for (int mu = 0; mu < 2; ++mu)
          for (int nu = mu + 1; nu < 2; ++nu)
            gf += kron(rep2.gamma[mu] * rep2.gamma[nu], id2) * f[std::size_t(mu)][std::size_t(nu)];
        return (kron(Mat::Identity(2, 2), t) + kron(iota, gf)).eval();
      };
      LatticeOperator dp = build_first_order(grid, principal, z_at);
      LatticeOperator delta = build_bochner_laplacian(
          grid, int(2 * fd2), rep2.metric_diag, rep2.convention_sign, [&](long s) {
            return bochner_connection_z(principal, rep2.metric_diag, rep2.convention_sign,
                                        z_at(s));
          });
      BlwSplit split = blw_split(dp, delta);
      xs.push_back(kappa);
      ys.push_back(split.e_blocks[std::size_t(probe)].trace().real());
    }
    RVec c = fit_poly4(xs, ys);
    out.kinetic_quadratic = c(2);
    RVec quad = c;
    quad(3) = quad(4) = 0;
    out.kinetic_fit_residual = poly_residual(xs, ys, quad);
  }
  return out;
}

RMat higgs_mass_operator(const FermionModel& m, const GammaRep& rep) {
  LagrangianSplit split = lagrangian_split(m, rep, 0.0);
  const double radius = split.higgs_min_radius > 0 ? split.higgs_min_radius : 1.0;
  Vec v0 = radius * m.vacuum / m.vacuum.norm();

  auto value = [&](const RVec& x) {
    Vec phi(m.nh);
    for (int j = 0; j < m.nh; ++j) phi(j) = Complex(x(j), x(m.nh + j));
    return pauli_higgs_potential(m, rep, phi);
  };
  RVec x0(2 * m.nh);
  for (int j = 0; j < m.nh; ++j) {
    x0(j) = v0(j).real();
    x0(m.nh + j) = v0(j).imag();
  }
  // five-point stencils are exact for quartic polynomials
  const double h = 0.05 * std::max(1.0, radius);
  const int dim = 2 * m.nh;
  RMat hess(dim, dim);
  auto shift = [&](int a, double da, int b, double db) {
    RVec x = x0;
    x(a) += da;
    x(b) += db;
    return value(x);
  };
  for (int a = 0; a < dim; ++a) {
    double f0 = value(x0);
    double fp = shift(a, h, a, 0), fm = shift(a, -h, a, 0);
    double fpp = shift(a, 2 * h, a, 0), fmm = shift(a, -2 * h, a, 0);
    hess(a, a) = (-fpp + 16 * fp - 30 * f0 + 16 * fm - fmm) / (12 * h * h);
    for (int b = a + 1; b < dim; ++b) {
      double v1 = shift(a, h, b, h), v2 = shift(a, h, b, -h);
      double v3 = shift(a, -h, b, h), v4 = shift(a, -h, b, -h);
      double v5 = shift(a, 2 * h, b, 2 * h), v6 = shift(a, 2 * h, b, -2 * h);
      double v7 = shift(a, -2 * h, b, 2 * h), v8 = shift(a, -2 * h, b, -2 * h);
      double coarse = (v5 - v6 - v7 + v8) / (16 * h * h);
      double fine = (v1 - v2 - v3 + v4) / (4 * h * h);
      hess(a, b) = hess(b, a) = (4 * fine - coarse) / 3.0;  // Richardson, exact deg-4
    }
  }
  return hess;
}

MassSpectrumReport sm_lepton_demo(double y, double v, std::uint64_t seed) {
  MassSpectrumReport rep_out;
  FermionModel m = electroweak_model(y, v);
  Rng rng(seed);
  m.validate(rng);
  GammaRep grep = build_gamma_rep(Signature(3, 1), +1);

  MassOperator mf = fermionic_mass_operator(m, grep);
  EigenbundleSplit split = eigenbundle_split(mf, grep);
  for (double m2 : split.masses_squared) rep_out.fermion_masses.push_back(std::sqrt(m2));
  if (split.kernel_index >= 0)
    rep_out.kernel_internal_mult = split.internal_mult[std::size_t(split.kernel_index)];

  IsotropyResult iso = isotropy_algebra(m);
  rep_out.little_group_dim = iso.dim;
  rep_out.goldstone_count = iso.goldstone_count;

  RMat m2ym = ym_mass_matrix(m);
  Eigen::SelfAdjointEigenSolver<RMat> es(m2ym);
  rep_out.ym_rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    rep_out.ym_rank += std::abs(es.eigenvalues()(i)) > 1e-8 ? 1 : 0;

  // Pauli cancellation on random data
  const Eigen::Index fd = Eigen::Index(grep.dim()) * m.nf;
  Mat d = rng.random_matrix(fd, fd);
  Mat grading = kron(grep.chirality, m.chi);
  d = 0.5 * (d - grading * d * grading);  // make it odd
  std::vector<std::vector<Mat>> f(std::size_t(grep.n()),
                                  std::vector<Mat>(std::size_t(grep.n()), Mat::Zero(m.nf, m.nf)));
  for (int mu = 0; mu < grep.n(); ++mu)
    for (int nu = mu + 1; nu < grep.n(); ++nu) {
      f[std::size_t(mu)][std::size_t(nu)] = rng.random_anti_hermitian(m.nf);
      f[std::size_t(nu)][std::size_t(mu)] = -f[std::size_t(mu)][std::size_t(nu)];
    }
  Mat dp = build_pauli_dirac(d, grep, m.nf, f);
  double worst = 0;
  for (int t = 0; t < 16; ++t) {
    Vec psi = rng.random_vector(fd);
    worst = std::max(worst,
                     pauli_cancellation_check(d, dp, psi, grading, SignatureKind::Lorentzian));
  }
  rep_out.pauli_cancellation = worst;

  LagrangianSplit lag = lagrangian_split(m, grep, 1.0);
  rep_out.ym_fit_residual = lag.ym_fit_residual;
  rep_out.higgs_fit_residual = lag.higgs_fit_residual;
  rep_out.higgs_min_radius = lag.higgs_min_radius;

  const double me = std::abs(y * v);
  rep_out.pass = rep_out.fermion_masses.size() == 2 &&
                 std::abs(rep_out.fermion_masses[0]) < 1e-9 &&
                 std::abs(rep_out.fermion_masses[1] - me) < 1e-9 * std::max(1.0, me) &&
                 rep_out.kernel_internal_mult == 1 && rep_out.little_group_dim == 1 &&
                 rep_out.goldstone_count == 3 && rep_out.ym_rank == 3 &&
                 rep_out.pauli_cancellation < 1e-10 && rep_out.ym_fit_residual < 1e-8 &&
                 rep_out.higgs_fit_residual < 1e-8 && rep_out.higgs_min_radius > 0;
  return rep_out;
}

}  // namespace dirackit
