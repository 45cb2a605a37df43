#include "dirackit/dirac_local.hpp"

#include <bit>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dirackit {

LocalDiracData make_local_data(const GammaRep& rep, int nf, const Mat& chi) {
  LocalDiracData d;
  d.rep = rep;
  d.nf = nf;
  d.chi = chi;
  if (max_abs(chi * chi - Mat::Identity(nf, nf)) > kAlgebraTol)
    throw grading_error("chi must be an involution");
  d.gauge.assign(std::size_t(rep.n()), Mat::Zero(nf, nf));
  d.metric_point = RMat(rep.metric_diag.asDiagonal());
  return d;
}

std::vector<Mat> gamma_for_metric(const GammaRep& rep, const RMat& g) {
  const int n = rep.n();
  if (g.rows() != n || g.cols() != n)
    throw invalid_signature("metric dimension mismatch");
  if (max_abs(g - g.transpose()) > 1e-12)
    throw invalid_signature("metric must be symmetric");
  const double det = g.determinant();
  double scale = std::pow(g.cwiseAbs().maxCoeff(), n);
  if (std::abs(det) < 1e-10 * std::max(scale, 1.0))
    throw invalid_signature("metric must be non-degenerate");

  // orthonormal diagonal case: gammas unchanged up to rescale
  // general case: find S with S eta S^T = g^{-1}, eta = diag(rep metric)
  RMat ginv = g.inverse();
  Eigen::SelfAdjointEigenSolver<RMat> es(ginv);
  RVec lam = es.eigenvalues();
  RMat q = es.eigenvectors();
  // signature of ginv must match (p,q); sort descending so positives first
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[std::size_t(i)] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lam(a) > lam(b); });
  int pos = 0;
  for (int i = 0; i < n; ++i) pos += lam(i) > 0 ? 1 : 0;
  if (pos != rep.sig.p)
    throw invalid_signature("metric signature does not match the representation");
  RMat s(n, n);
  for (int c = 0; c < n; ++c) {
    const int src = order[std::size_t(c)];
    s.col(c) = q.col(src) * std::sqrt(std::abs(lam(src)));
  }
  // now s * eta * s^T = ginv with eta = diag(+1 x p, -1 x q)
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int mu = 0; mu < n; ++mu) {
    Mat gm = Mat::Zero(rep.dim(), rep.dim());
    for (int a = 0; a < n; ++a) gm += s(mu, a) * rep.gamma[a];
    out.push_back(std::move(gm));
  }
  return out;
}

Mat theta_contraction(const LocalDiracData& d) {
  const Eigen::Index fd = d.fiber_dim();
  Mat lam = Mat::Zero(fd, fd);
  for (const auto& [mask, coeff] : d.theta)
    lam += kron(gamma_of_blade_mask(d.rep, mask), coeff);
  return lam;
}

namespace {

// spin lift of the Levi-Civita coefficients: wCl_mu = (1/4) w_{mu i k} g^i g^k
Mat spin_connection_component(const LocalDiracData& d, const std::vector<Mat>& gam,
                              const RMat& g, int mu) {
  const int n = d.rep.n();
  Mat out = Mat::Zero(d.rep.dim(), d.rep.dim());
  if (d.levi_civita.empty()) return out;
  const RMat& w = d.levi_civita[std::size_t(mu)];  // w(i,k) = w^i_{mu k}
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double wik = 0;  // lower the first index: w_{mu i k} = g_{il} w^l_{mu k}
      for (int l = 0; l < n; ++l) wik += g(i, l) * w(l, k);
      out += 0.25 * wik * gam[std::size_t(i)] * gam[std::size_t(k)];
    }
  return out;
}

}  // namespace

std::vector<Mat> dirac_form_part(const LocalDiracData& d) {
  const int n = d.rep.n();
  Mat lam = theta_contraction(d);
  std::vector<Mat> gam = gamma_for_metric(d.rep, d.metric_point);
  const Mat id_int = Mat::Identity(d.nf, d.nf);
  std::vector<Mat> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int mu = 0; mu < n; ++mu) {
    Mat th = Mat::Zero(d.rep.dim(), d.rep.dim());
    for (int nu = 0; nu < n; ++nu) th += d.metric_point(mu, nu) * gam[std::size_t(nu)];
    out.push_back(kron(th / double(n), id_int) * lam);
  }
  return out;
}

std::vector<Mat> assemble_omega(const LocalDiracData& d, bool check_parity) {
  const int n = d.rep.n();
  const Eigen::Index fd = d.fiber_dim();
  std::vector<Mat> gam = gamma_for_metric(d.rep, d.metric_point);
  const Mat id_spin = Mat::Identity(d.rep.dim(), d.rep.dim());
  const Mat id_int = Mat::Identity(d.nf, d.nf);

  std::vector<Mat> omega = dirac_form_part(d);
  for (int mu = 0; mu < n; ++mu) {
    if (!d.gauge.empty()) omega[std::size_t(mu)] += kron(id_spin, d.gauge[std::size_t(mu)]);
    omega[std::size_t(mu)] += kron(spin_connection_component(d, gam, d.metric_point, mu), id_int);
  }

  if (check_parity) {
    // each first-order summand gamma^mu(d_mu + omega_mu) of D must be odd
    // w.r.t. Gamma = gamma_M (x) chi; equivalently the coefficients omega_mu
    // are even (connection forms take values in End^+)
    const Mat gamma_f = d.grading();
    const Mat id_nf = Mat::Identity(d.nf, d.nf);
    for (int mu = 0; mu < n; ++mu) {
      Mat summand = kron(gam[std::size_t(mu)], id_nf) * omega[std::size_t(mu)];
      Mat even_part = summand + gamma_f * summand * gamma_f;
      if (max_abs(even_part) > 2 * kSolveTol * std::max(1.0, max_abs(summand)))
        throw grading_error("assembled operator is not odd w.r.t. the total grading");
    }
    (void)fd;
  }
  return omega;
}

LocalDiracData make_simple_type(const GammaRep& rep, int nf, const Mat& chi,
                                const Mat& phi, const RMat& g) {
  if (max_abs(chi * phi * chi + phi) > kSolveTol * std::max(1.0, max_abs(phi)))
    throw not_simple_type("phi must be odd: chi phi chi = -phi");
  LocalDiracData d = make_local_data(rep, nf, chi);
  d.metric_point = g;
  // Lambda = sign * gamma_M (x) phi, so that gamma^mu Theta_mu Lambda = gamma_M (x) phi.
  // gamma_M = phase * top blade, hence theta_top = sign * phase * phi.
  const std::uint32_t top = (1u << rep.n()) - 1u;
  d.theta[top] = double(rep.convention_sign) * rep.chirality_phase * phi;
  return d;
}

SimpleTypeCheck check_simple_type(const std::vector<Mat>& omega, const GammaRep& rep,
                                  int nf, const RMat& g, double tol) {
  const int n = rep.n();
  RMat ginv = g.inverse();
  std::vector<Mat> gam = gamma_for_metric(rep, g);
  const Mat id_int = Mat::Identity(nf, nf);
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    Mat gi = kron(gam[std::size_t(i)], id_int);
    Mat m = Mat::Zero(omega[0].rows(), omega[0].cols());
    for (int j = 0; j < n; ++j) {
      Mat gj = kron(gam[std::size_t(j)], id_int);
      m += 2.0 * rep.convention_sign * ginv(i, j) * omega[std::size_t(j)];
      m += gj * commutator(omega[std::size_t(j)], gi);
    }
    worst = std::max(worst, max_abs(m));
  }
  double scale = 1.0;
  for (const Mat& w : omega) scale = std::max(scale, max_abs(w));
  return {worst <= tol * scale, worst};
}

Mat extract_phi(const std::vector<Mat>& omega, const GammaRep& rep, int nf,
                const Mat& chi, const RMat& g, double tol) {
  SimpleTypeCheck chk = check_simple_type(omega, rep, nf, g, tol);
  if (!chk.is_simple)
    throw not_simple_type("simple-type condition fails, residual " + std::to_string(chk.residual));
  const int n = rep.n();
  const int sd = rep.dim();
  std::vector<Mat> gam = gamma_for_metric(rep, g);
  const Mat id_int = Mat::Identity(nf, nf);
  Mat contraction = Mat::Zero(sd * nf, sd * nf);
  for (int mu = 0; mu < n; ++mu)
    contraction += kron(gam[std::size_t(mu)], id_int) * omega[std::size_t(mu)];
  // contraction = gamma_M (x) phi  =>  (gamma_M (x) 1) * contraction = 1 (x) phi
  Mat lifted = kron(rep.chirality, id_int) * contraction;
  // partial trace over the spinor factor
  Mat phi = Mat::Zero(nf, nf);
  for (int s = 0; s < sd; ++s)
    phi += lifted.block(s * nf, s * nf, nf, nf);
  phi /= double(sd);
  // reject if the contraction was not of product form
  Mat recon = kron(rep.chirality, phi);
  if (max_abs(recon - contraction) > tol * std::max(1.0, max_abs(contraction)))
    throw not_simple_type("contraction is not gamma_M (x) phi");
  if (max_abs(chi * phi * chi + phi) > tol * std::max(1.0, max_abs(phi)))
    throw not_simple_type("extracted phi is not chi-odd");
  return phi;
}

std::vector<Mat> simple_type_solution_space(const GammaRep& rep, int nf, const Mat& chi,
                                            const RMat& g) {
  const int n = rep.n();
  const int sd = rep.dim();
  const Eigen::Index fd = Eigen::Index(sd) * nf;
  if (n > 4 || nf > 4)
    throw std::invalid_argument("solution space solve limited to n <= 4, N_F <= 4");

  // basis of Gamma-odd fiber matrices Z
  const Mat gamma_f = kron(rep.chirality, chi);
  std::vector<Mat> zbasis;
  {
    std::vector<Vec> cols;
    for (Eigen::Index a = 0; a < fd; ++a)
      for (Eigen::Index b = 0; b < fd; ++b) {
        Mat e = Mat::Zero(fd, fd);
        e(a, b) = 1;
        Mat odd = 0.5 * (e - gamma_f * e * gamma_f);
        if (max_abs(odd) > 1e-14) cols.push_back(Eigen::Map<Vec>(odd.data(), fd * fd));
      }
    Mat raw(fd * fd, Eigen::Index(cols.size()));
    for (Eigen::Index j = 0; j < raw.cols(); ++j) raw.col(j) = cols[std::size_t(j)];
    Eigen::HouseholderQR<Mat> qr(raw);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    Mat qfull = qr.householderQ() * Mat::Identity(raw.rows(), raw.cols());
    for (Eigen::Index j = 0; j < raw.cols(); ++j)
      if (j < r.rows() && std::abs(r(j, j)) > 1e-9) {
        Mat z = Eigen::Map<Mat>(qfull.col(j).data(), fd, fd);
        zbasis.push_back(z);
      }
  }

  const SolderingForm theta = make_soldering_form(rep, nf);
  RMat ginv = g.inverse();
  std::vector<Mat> gam = gamma_for_metric(rep, g);
  const Mat id_int = Mat::Identity(nf, nf);

  // linear map Z -> simple-type residual matrices, as a dense system
  const Eigen::Index rows = Eigen::Index(n) * fd * fd;
  Mat a(rows, Eigen::Index(zbasis.size()));
  for (std::size_t c = 0; c < zbasis.size(); ++c) {
    std::vector<Mat> om;
    om.reserve(static_cast<std::size_t>(n));
    for (int mu = 0; mu < n; ++mu) {
      Mat th = Mat::Zero(sd, sd);
      for (int nu = 0; nu < n; ++nu) th += g(mu, nu) * gam[std::size_t(nu)];
      om.push_back(kron(th / double(n), id_int) * zbasis[c]);
    }
    Eigen::Index off = 0;
    for (int i = 0; i < n; ++i) {
      Mat gi = kron(gam[std::size_t(i)], id_int);
      Mat m = Mat::Zero(fd, fd);
      for (int j = 0; j < n; ++j) {
        Mat gj = kron(gam[std::size_t(j)], id_int);
        m += 2.0 * rep.convention_sign * ginv(i, j) * om[std::size_t(j)];
        m += gj * commutator(om[std::size_t(j)], gi);
      }
      a.block(off, Eigen::Index(c), fd * fd, 1) = Eigen::Map<Vec>(m.data(), fd * fd);
      off += fd * fd;
    }
  }

  Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double thresh = 1e-8 * (sv.size() > 0 ? sv(0) : 1.0);
  std::vector<Mat> basis;
  for (Eigen::Index j = 0; j < sv.size(); ++j) {
    if (sv(j) > thresh) continue;
    Vec comb = svd.matrixV().col(j);
    Mat z = Mat::Zero(fd, fd);
    for (std::size_t c = 0; c < zbasis.size(); ++c) z += comb(Eigen::Index(c)) * zbasis[c];
    basis.push_back(z);
  }
  return basis;
}

double dirac_potential_from_omega(const std::vector<Mat>& omega, const GammaRep& rep,
                                  int nf, const RMat& g, double r_m, double big_n) {
  const int n = rep.n();
  std::vector<Mat> gam = gamma_for_metric(rep, g);
  const Mat id_int = Mat::Identity(nf, nf);
  std::vector<Mat> gi;
  gi.reserve(static_cast<std::size_t>(n));
  for (int mu = 0; mu < n; ++mu) gi.push_back(kron(gam[std::size_t(mu)], id_int));

  Complex t2 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t2 += (commutator(gi[std::size_t(i)], gi[std::size_t(j)]) *
             commutator(omega[std::size_t(i)], omega[std::size_t(j)]))
                .trace();
  std::vector<Mat> u;
  u.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Mat ui = Mat::Zero(omega[0].rows(), omega[0].cols());
    for (int k = 0; k < n; ++k)
      ui += gi[std::size_t(k)] * commutator(omega[std::size_t(k)], gi[std::size_t(i)]);
    u.push_back(std::move(ui));
  }
  Complex t3 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t3 += g(i, j) * (u[std::size_t(i)] * u[std::size_t(j)]).trace();

  const double c1 = kPotentialC1;
  const double c2 = potential_c2(rep.convention_sign);
  return 0.5 * big_n * r_m + (c1 * t2 + c2 * t3).real();
}

double dirac_potential_analytic(const LocalDiracData& d) {
  std::vector<Mat> omega = dirac_form_part(d);
  return dirac_potential_from_omega(omega, d.rep, d.nf, d.metric_point, d.r_m,
                                    double(d.fiber_dim()));
}

}  // namespace dirackit
