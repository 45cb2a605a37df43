#include "dirackit/symmetry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dirackit/soldering.hpp"

namespace dirackit {

MassOperator fermionic_mass_operator(const FermionModel& m, const GammaRep& rep) {
  MassOperator out;
  out.internal = m.yukawa(m.vacuum);
  if (max_abs(out.internal + out.internal.adjoint().eval()) >
      kSolveTol * std::max(1.0, max_abs(out.internal)))
    throw model_error("Yukawa image of the vacuum must be anti-Hermitian");
  if (max_abs(m.chi * out.internal * m.chi + out.internal) >
      kSolveTol * std::max(1.0, max_abs(out.internal)))
    throw model_error("Yukawa image of the vacuum must be chi-odd");
  out.matrix = Complex(0, -1) * kron(rep.chirality, out.internal);
  Eigen::SelfAdjointEigenSolver<Mat> es(out.matrix);
  out.eigenvalues = es.eigenvalues();
  return out;
}

EigenbundleSplit eigenbundle_split(const MassOperator& mf, const GammaRep& rep,
                                   double degeneracy_tol) {
  Mat m2 = mf.matrix * mf.matrix;
  Eigen::SelfAdjointEigenSolver<Mat> es(m2);
  RVec ev = es.eigenvalues();
  Mat vecs = es.eigenvectors();

  EigenbundleSplit out;
  const Eigen::Index d = ev.size();
  Eigen::Index i = 0;
  while (i < d) {
    Eigen::Index j = i;
    while (j < d && std::abs(ev(j) - ev(i)) <= degeneracy_tol) ++j;
    Mat block = vecs.middleCols(i, j - i);
    out.projectors.push_back(block * block.adjoint());
    double lambda = std::abs(ev.segment(i, j - i).mean());
    out.masses_squared.push_back(lambda < degeneracy_tol ? 0.0 : lambda);
    out.internal_mult.push_back(int((j - i) / rep.dim()));
    if (out.masses_squared.back() == 0.0) out.kernel_index = int(out.masses_squared.size()) - 1;
    i = j;
  }
  return out;
}

namespace {

// real matrix whose columns are (Re, Im) stacks of rho_H(T_a) V
RMat orbit_map(const FermionModel& m) {
  RMat b(2 * m.nh, m.dim_g());
  for (int a = 0; a < m.dim_g(); ++a) {
    Vec w = m.gen_h[std::size_t(a)] * m.vacuum;
    b.block(0, a, m.nh, 1) = w.real();
    b.block(m.nh, a, m.nh, 1) = w.imag();
  }
  return b;
}

}  // namespace

IsotropyResult isotropy_algebra(const FermionModel& m) {
  IsotropyResult out;
  const int g = m.dim_g();
  if (m.vacuum.norm() == 0.0) {
    out.basis = RMat::Identity(g, g);
    out.dim = g;
    out.goldstone_count = 0;
    return out;
  }
  RMat b = orbit_map(m);
  Eigen::JacobiSVD<RMat> svd(b, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > thresh ? 1 : 0;
  out.dim = g - rank;
  out.basis = svd.matrixV().rightCols(out.dim);
  out.goldstone_count = rank;
  return out;
}

double yukawa_norm(const FermionModel& m) {
  Vec vhat = m.vacuum / m.vacuum.norm();
  Eigen::JacobiSVD<Mat> svd(m.yukawa(vhat));
  return svd.singularValues()(0);
}

RMat ym_mass_matrix(const FermionModel& m) {
  const int g = m.dim_g();
  const double gy2 = yukawa_norm(m) * yukawa_norm(m);
  RMat out(g, g);
  const Complex i1(0, 1);
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b) {
      Mat ha = i1 * m.gen_h[std::size_t(a)];
      Mat hb = i1 * m.gen_h[std::size_t(b)];
      Complex val = m.vacuum.adjoint() * (anticommutator(ha, hb) * m.vacuum);
      out(a, b) = 2.0 * gy2 * val.real();
    }
  return out;
}

GoldstoneSplit goldstone_split(const FermionModel& m) {
  if (m.vacuum.norm() == 0.0) throw model_error("goldstone_split requires V != 0");
  RMat b = orbit_map(m);
  Eigen::JacobiSVD<RMat> svd(b, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > thresh ? 1 : 0;
  GoldstoneSplit out;
  out.goldstone = svd.matrixU().leftCols(rank);
  out.physical = svd.matrixU().rightCols(2 * m.nh - rank);
  return out;
}

CompatibilityResult compatibility_deficit(const FermionModel& m, const GammaRep& rep,
                                          const std::vector<RVec>& a_coeffs) {
  MassOperator mf = fermionic_mass_operator(m, rep);
  RMat m2ym = ym_mass_matrix(m);
  CompatibilityResult out;
  for (const RVec& a : a_coeffs) {
    Mat a_f = Mat::Zero(m.nf, m.nf);
    for (int e = 0; e < m.dim_g(); ++e) a_f += a(e) * m.gen_f[std::size_t(e)];
    Mat c = commutator(kron(Mat::Identity(rep.dim(), rep.dim()), a_f), mf.matrix);
    out.deficit += c.squaredNorm();
    out.ym_quadratic += (a.transpose() * m2ym * a)(0, 0);
  }
  out.ratio = out.ym_quadratic > 1e-14 ? out.deficit / out.ym_quadratic : 0.0;
  return out;
}

double vacuum_potential(const FermionModel& m, const GammaRep& rep) {
  MassOperator mf = fermionic_mass_operator(m, rep);
  // internal masses: eigenvalues of -internal^2 (internal is anti-Hermitian)
  Mat m2 = -mf.internal * mf.internal;
  Eigen::SelfAdjointEigenSolver<Mat> es(m2);
  return es.eigenvalues().sum() / double(m.nf);
}

// exp of an anti-Hermitian matrix via unitary diagonalization
static Mat expm_anti_hermitian(const Mat& x) {
  Mat h = Complex(0, 1) * x;  // Hermitian
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phase(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase(i) = std::exp(Complex(0, -es.eigenvalues()(i)));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

std::optional<Mat> unitary_gauge_transformation(const FermionModel& m, const Vec& phi,
                                                double tol, int max_iter) {
  if (phi.norm() == 0.0 || m.vacuum.norm() == 0.0) return std::nullopt;
  Vec target = m.vacuum / m.vacuum.norm();
  Vec current = phi / phi.norm();
  const int g = m.dim_g();
  Mat total = Mat::Identity(m.nh, m.nh);

  double step = 0.5;
  double best = (target - current).norm();
  for (int it = 0; it < max_iter && best > tol; ++it) {
    // gradient of Re<target, exp(sum c T) current> at c = 0
    RVec grad(g);
    for (int a = 0; a < g; ++a)
      grad(a) = (target.adjoint() * (m.gen_h[std::size_t(a)] * current))(0, 0).real();
    if (grad.norm() < 1e-15) {
      // saddle: random kick
      for (int a = 0; a < g; ++a) grad(a) = std::cos(double(it + a));
      grad *= 1e-3;
    }
    Mat x = Mat::Zero(m.nh, m.nh);
    for (int a = 0; a < g; ++a) x += step * grad(a) * m.gen_h[std::size_t(a)];
    Mat u = expm_anti_hermitian(x);
    Vec moved = u * current;
    double cand = (target - moved / moved.norm()).norm();
    if (cand < best) {
      best = cand;
      current = moved / moved.norm();
      total = u * total;
      step = std::min(step * 1.3, 2.0);
    } else {
      step *= 0.5;
      if (step < 1e-14) break;
    }
  }
  if (best > tol) return std::nullopt;
  return total;
}

CurvatureDecomposition curvature_decomposition_check(const FermionModel& m,
                                                     const GammaRep& rep,
                                                     const std::vector<RVec>& a_coeffs,
                                                     const Vec& phi_h) {
  const int n = rep.n();
  const int sd = rep.dim();
  const Mat id_spin = Mat::Identity(sd, sd);
  const Mat id_int = Mat::Identity(m.nf, m.nf);

  // constant chart data: omega_mu = 1 (x) A_mu + Theta_mu (gamma_M (x) Y(V + phi_H))
  Mat ytot = m.yukawa(m.vacuum + phi_h);
  Mat s = kron(rep.chirality, ytot);
  std::vector<Mat> omega;
  std::vector<Mat> a_full;
  for (int mu = 0; mu < n; ++mu) {
    Mat a_int = Mat::Zero(m.nf, m.nf);
    if (mu < int(a_coeffs.size()))
      for (int e = 0; e < m.dim_g(); ++e) a_int += a_coeffs[std::size_t(mu)](e) * m.gen_f[std::size_t(e)];
    a_full.push_back(kron(id_spin, a_int));
    Mat theta_mu = kron(rep.gamma_lower(mu), id_int) / double(n);
    omega.push_back(a_full.back() + theta_mu * s);
  }

  // lattice-oracle curvature (constant fields: exact commutator form)
  std::vector<Mat> w = dirac_connection_coefficients(rep, m.nf, omega);
  std::vector<std::vector<Mat>> f_lat = connection_curvature_constant(w);

  // predicted family: F = F_A + M^2 Theta^Theta - i sign Theta ^ (ad_A M);
  // per-term residuals show what breaks when a term is dropped
  Mat mf = Complex(0, -1) * s;  // total mass operator of V + phi_H
  const double sign = rep.convention_sign;
  CurvatureDecomposition out;
  double worst_total = 0, worst_gauge = 0, worst_mass = 0, worst_cross = 0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      Mat theta_mu = kron(rep.gamma_lower(mu), id_int) / double(n);
      Mat theta_nu = kron(rep.gamma_lower(nu), id_int) / double(n);
      Mat f_gauge = commutator(a_full[std::size_t(mu)], a_full[std::size_t(nu)]);
      Mat f_mass = mf * mf * (theta_mu * theta_nu - theta_nu * theta_mu);
      Mat dmu = commutator(a_full[std::size_t(mu)], mf);
      Mat dnu = commutator(a_full[std::size_t(nu)], mf);
      Mat f_cross = Complex(0, -sign) * (theta_mu * dnu - theta_nu * dmu);
      const Mat& f = f_lat[std::size_t(mu)][std::size_t(nu)];
      worst_total = std::max(worst_total, max_abs(f - f_gauge - f_mass - f_cross));
      worst_gauge = std::max(worst_gauge, max_abs(f - f_mass - f_cross));
      worst_mass = std::max(worst_mass, max_abs(f - f_gauge - f_cross));
      worst_cross = std::max(worst_cross, max_abs(f - f_gauge - f_mass));
    }
  out.residual_total = worst_total;
  out.residual_gauge = worst_gauge;
  out.residual_mass = worst_mass;
  out.residual_cross = worst_cross;

  // phi_H = 0 reduction: the mass family equals ext_Theta(mu_F) with
  // mu_F = Theta * M_F^2 (one-form)
  if (phi_h.norm() == 0.0) {
    double red = 0;
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        Mat theta_mu = kron(rep.gamma_lower(mu), id_int) / double(n);
        Mat theta_nu = kron(rep.gamma_lower(nu), id_int) / double(n);
        Mat f_mass = mf * mf * (theta_mu * theta_nu - theta_nu * theta_mu);
        Mat mu_f_mu = theta_mu * (mf * mf);
        Mat mu_f_nu = theta_nu * (mf * mf);
        Mat ext = theta_mu * mu_f_nu - theta_nu * mu_f_mu;
        red = std::max(red, max_abs(f_mass - ext));
      }
    out.mass_term_reduction = red;
  }
  return out;
}

}  // namespace dirackit
