#include "dirackit/lattice.hpp"

#include <fstream>
#include <map>

#include <Eigen/Eigenvalues>

namespace dirackit {

namespace {

using Triplet = Eigen::Triplet<Complex>;

void add_block(std::vector<Triplet>& trip, long row0, long col0, const Mat& b) {
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j)
      if (b(i, j) != Complex(0, 0)) trip.emplace_back(row0 + i, col0 + j, b(i, j));
}

void check_capacity(const Grid& grid, int fiber) {
  if (grid.sites() * fiber > Grid::kMaxEntries)
    throw lattice_error("grid x fiber exceeds the configured memory cap");
}

std::vector<Mat> doubled_gammas(const GammaRep& rep, int nf) {
  const Mat id_int = Mat::Identity(nf, nf);
  std::vector<Mat> g;
  g.reserve(static_cast<std::size_t>(rep.n()));
  for (int mu = 0; mu < rep.n(); ++mu) g.push_back(kron(rep.gamma[mu], id_int));
  return g;
}

}  // namespace

LatticeOperator build_first_order(const Grid& grid, const std::vector<Mat>& principal,
                                  const std::function<Mat(long)>& zero_order) {
  const int fiber = int(principal[0].rows());
  check_capacity(grid, fiber);
  LatticeOperator op;
  op.grid = grid;
  op.fiber = fiber;
  const long sites = grid.sites();
  std::vector<Triplet> trip;
  trip.reserve(std::size_t(sites) * std::size_t(fiber) * std::size_t(2 * grid.n + fiber));
  for (long s = 0; s < sites; ++s) {
    for (int mu = 0; mu < grid.n; ++mu) {
      const double w = 1.0 / (2.0 * grid.h[std::size_t(mu)]);
      add_block(trip, s * fiber, grid.shift(s, mu, +1) * fiber, w * principal[std::size_t(mu)]);
      add_block(trip, s * fiber, grid.shift(s, mu, -1) * fiber, -w * principal[std::size_t(mu)]);
    }
    if (zero_order) add_block(trip, s * fiber, s * fiber, zero_order(s));
  }
  op.mat = SpMat(sites * fiber, sites * fiber);
  op.mat.setFromTriplets(trip.begin(), trip.end());
  return op;
}

LatticeOperator build_lattice_dirac(const GammaRep& rep, int nf, const Grid& grid,
                                    const LatticeFields& fields) {
  if (grid.n != rep.n()) throw lattice_error("grid dimension must match the representation");
  std::vector<Mat> gam = doubled_gammas(rep, nf);
  std::function<Mat(long)> zero;
  if (fields.omega) {
    zero = [gam, &fields, n = grid.n](long s) {
      std::vector<Mat> om = fields.omega(s);
      Mat z = Mat::Zero(gam[0].rows(), gam[0].cols());
      for (int mu = 0; mu < n; ++mu) z += gam[std::size_t(mu)] * om[std::size_t(mu)];
      return z;
    };
  }
  return build_first_order(grid, gam, zero);
}

LatticeOperator site_diagonal(const Grid& grid, int fiber,
                              const std::function<Mat(long)>& block) {
  check_capacity(grid, fiber);
  LatticeOperator op;
  op.grid = grid;
  op.fiber = fiber;
  const long sites = grid.sites();
  std::vector<Triplet> trip;
  for (long s = 0; s < sites; ++s) add_block(trip, s * fiber, s * fiber, block(s));
  op.mat = SpMat(sites * fiber, sites * fiber);
  op.mat.setFromTriplets(trip.begin(), trip.end());
  return op;
}

std::vector<Mat> bochner_connection_z(const std::vector<Mat>& principal,
                                      const RVec& metric_diag, int sign, const Mat& z) {
  const int n = int(principal.size());
  std::vector<Mat> conn;
  conn.reserve(static_cast<std::size_t>(n));
  for (int mu = 0; mu < n; ++mu) {
    Mat up = 0.5 * double(sign) * anticommutator(principal[std::size_t(mu)], z);
    conn.push_back(metric_diag(mu) * up);  // lower the index
  }
  return conn;
}

std::vector<Mat> bochner_connection(const GammaRep& rep, int nf,
                                    const std::vector<Mat>& omega) {
  std::vector<Mat> gam = doubled_gammas(rep, nf);
  Mat z = Mat::Zero(gam[0].rows(), gam[0].cols());
  for (int mu = 0; mu < rep.n(); ++mu) z += gam[std::size_t(mu)] * omega[std::size_t(mu)];
  return bochner_connection_z(gam, rep.metric_diag, rep.convention_sign, z);
}

LatticeOperator build_bochner_laplacian(const Grid& grid, int fiber, const RVec& metric_diag,
                                        int sign,
                                        const std::function<std::vector<Mat>(long)>& conn) {
  check_capacity(grid, fiber);
  const long sites = grid.sites();
  const long dim = sites * fiber;

  LatticeOperator op;
  op.grid = grid;
  op.fiber = fiber;
  op.mat = SpMat(dim, dim);

  for (int mu = 0; mu < grid.n; ++mu) {
    std::vector<Triplet> trip;
    const double w = 1.0 / (2.0 * grid.h[std::size_t(mu)]);
    const Mat idb = Mat::Identity(fiber, fiber);
    for (long s = 0; s < sites; ++s) {
      add_block(trip, s * fiber, grid.shift(s, mu, +1) * fiber, w * idb);
      add_block(trip, s * fiber, grid.shift(s, mu, -1) * fiber, -w * idb);
      if (conn) add_block(trip, s * fiber, s * fiber, conn(s)[std::size_t(mu)]);
    }
    SpMat nabla(dim, dim);
    nabla.setFromTriplets(trip.begin(), trip.end());
    const double ginv = metric_diag(mu);  // orthonormal diagonal
    op.mat = op.mat + SpMat(double(sign) * ginv * (nabla * nabla));
  }
  return op;
}

BlwSplit blw_split(const LatticeOperator& d, const LatticeOperator& delta) {
  if (d.dim() != delta.dim() || d.fiber != delta.fiber)
    throw lattice_error("blw_split: operator shapes differ");
  SpMat e = SpMat(d.mat * d.mat) - delta.mat;
  const int fiber = d.fiber;
  const Grid& grid = d.grid;
  const long sites = grid.sites();

  // collect blocks: site-diagonal and +-1 hops per direction
  std::vector<Mat> diag(std::size_t(sites), Mat::Zero(fiber, fiber));
  std::vector<std::vector<Mat>> hop_plus(static_cast<std::size_t>(grid.n));
  std::vector<std::vector<Mat>> hop_minus(static_cast<std::size_t>(grid.n));
  for (int mu = 0; mu < grid.n; ++mu) {
    hop_plus[std::size_t(mu)].assign(std::size_t(sites), Mat::Zero(fiber, fiber));
    hop_minus[std::size_t(mu)].assign(std::size_t(sites), Mat::Zero(fiber, fiber));
  }
  double structural = 0.0;

  for (int k = 0; k < e.outerSize(); ++k) {
    for (SpMat::InnerIterator it(e, k); it; ++it) {
      const long row = it.row(), col = it.col();
      const long srow = row / fiber, scol = col / fiber;
      if (srow == scol) {
        diag[std::size_t(srow)](row % fiber, col % fiber) += it.value();
        continue;
      }
      bool matched = false;
      for (int mu = 0; mu < grid.n && !matched; ++mu) {
        if (grid.shift(srow, mu, +1) == scol && grid.shift(scol, mu, -1) == srow) {
          hop_plus[std::size_t(mu)][std::size_t(srow)](row % fiber, col % fiber) += it.value();
          matched = true;
        } else if (grid.shift(srow, mu, -1) == scol) {
          hop_minus[std::size_t(mu)][std::size_t(srow)](row % fiber, col % fiber) += it.value();
          matched = true;
        }
      }
      if (!matched) structural = std::max(structural, std::abs(it.value()));
    }
  }

  BlwSplit out;
  out.structural_residual = structural;
  out.e_blocks.assign(std::size_t(sites), Mat::Zero(fiber, fiber));
  out.first_order_residual = 0.0;
  for (long s = 0; s < sites; ++s) {
    Mat acc = diag[std::size_t(s)];
    for (int mu = 0; mu < grid.n; ++mu) {
      const Mat& hp = hop_plus[std::size_t(mu)][std::size_t(s)];
      const Mat& hm = hop_minus[std::size_t(mu)][std::size_t(s)];
      acc += hp + hm;
      Mat first = 0.5 * grid.h[std::size_t(mu)] * (hp - hm);
      out.first_order_residual = std::max(out.first_order_residual, max_abs(first));
    }
    out.e_blocks[std::size_t(s)] = acc;
  }
  return out;
}

std::vector<double> dirac_potential_numeric(const BlwSplit& split) {
  std::vector<double> v;
  v.reserve(split.e_blocks.size());
  for (const Mat& e : split.e_blocks) v.push_back(e.trace().real());
  return v;
}

LatticeOperator gauge_transform(const LatticeOperator& d, const GammaRep& rep, int nf,
                                const std::function<Mat(long)>& u_internal) {
  const int sd = rep.dim();
  const long sites = d.grid.sites();
  std::vector<Triplet> trip, trip_inv;
  for (long s = 0; s < sites; ++s) {
    Mat u = u_internal(s);
    if (max_abs(u * u.adjoint() - Mat::Identity(nf, nf)) > 1e-10)
      throw lattice_error("gauge transformation must be unitary");
    Mat uf = kron(Mat::Identity(sd, sd), u);  // commutes with the Clifford action
    add_block(trip, s * d.fiber, s * d.fiber, uf);
    add_block(trip_inv, s * d.fiber, s * d.fiber, uf.adjoint());
  }
  SpMat u(d.dim(), d.dim()), uinv(d.dim(), d.dim());
  u.setFromTriplets(trip.begin(), trip.end());
  uinv.setFromTriplets(trip_inv.begin(), trip_inv.end());
  LatticeOperator out = d;
  out.mat = SpMat(u * SpMat(d.mat * uinv));
  return out;
}

double scalar_curvature(const ChartDescriptor& chart, const Grid& grid, long site) {
  if (chart.kind == ChartDescriptor::Kind::Flat) return 0.0;
  if (grid.n != 2) throw lattice_error("conformal curvature supported on 2D charts only");
  std::vector<int> c = grid.coord(site);
  const double hx = grid.h[0], hy = grid.h[1];
  auto sig = [&](int i, int j) { return chart.sigma((c[0] + i) * hx, (c[1] + j) * hy); };
  const double lap = (sig(1, 0) - 2 * sig(0, 0) + sig(-1, 0)) / (hx * hx) +
                     (sig(0, 1) - 2 * sig(0, 0) + sig(0, -1)) / (hy * hy);
  return -2.0 * std::exp(-2.0 * sig(0, 0)) * lap;
}

DalambertResult dalambert_check(const GammaRep& rep, int nf, const Grid& grid,
                                const std::vector<Mat>& a_internal, const Mat& m_internal,
                                double tol) {
  const int n = rep.n();
  const Mat id_spin = Mat::Identity(rep.dim(), rep.dim());
  const Mat mass_term = kron(rep.chirality, m_internal);  // i M_F

  std::vector<Mat> gauge_omega;
  for (int mu = 0; mu < n; ++mu) gauge_omega.push_back(kron(id_spin, a_internal[std::size_t(mu)]));
  LatticeFields fields;
  fields.omega = [&](long) { return gauge_omega; };
  LatticeOperator slash_a = build_lattice_dirac(rep, nf, grid, fields);
  LatticeOperator mass_op = site_diagonal(grid, rep.dim() * nf, [&](long) { return mass_term; });
  SpMat dmat = slash_a.mat + mass_op.mat;

  SpMat d2 = SpMat(dmat * dmat);
  SpMat target = SpMat(slash_a.mat * slash_a.mat) + SpMat(mass_op.mat * mass_op.mat);
  const double deficit = std::sqrt(SpMat(d2 - target).squaredNorm());

  double comm = 0;
  for (int mu = 0; mu < n; ++mu)
    comm = std::max(comm, max_abs(commutator(a_internal[std::size_t(mu)], m_internal)));

  DalambertResult res;
  res.deficit = deficit;
  res.commutator = comm;
  res.compatible = deficit <= tol * std::sqrt(double(grid.sites()));
  return res;
}

Mat pointwise_blw_remainder(const std::vector<Mat>& principal, const RVec& metric_diag,
                            int sign, const Mat& z, const std::vector<Mat>& dz) {
  const int n = int(principal.size());
  std::vector<Mat> conn = bochner_connection_z(principal, metric_diag, sign, z);
  Mat e = z * z;
  for (int mu = 0; mu < n; ++mu) {
    e += principal[std::size_t(mu)] * dz[std::size_t(mu)];
    // dOm_mu in direction mu from the z-jet
    Mat dconn = metric_diag(mu) * 0.5 * double(sign) *
                anticommutator(principal[std::size_t(mu)], dz[std::size_t(mu)]);
    e -= double(sign) * metric_diag(mu) * dconn;  // g^{mu mu} dOm_mu (diagonal)
    e -= double(sign) * metric_diag(mu) * conn[std::size_t(mu)] * conn[std::size_t(mu)];
  }
  return e;
}

Mat constant_blw_remainder(const GammaRep& rep, int nf, const std::vector<Mat>& omega) {
  std::vector<Mat> gam = doubled_gammas(rep, nf);
  Mat z = Mat::Zero(gam[0].rows(), gam[0].cols());
  for (int mu = 0; mu < rep.n(); ++mu) z += gam[std::size_t(mu)] * omega[std::size_t(mu)];
  std::vector<Mat> dz(std::size_t(rep.n()), Mat::Zero(z.rows(), z.cols()));
  return pointwise_blw_remainder(gam, rep.metric_diag, rep.convention_sign, z, dz);
}

std::vector<Mat> dirac_connection_coefficients(const GammaRep& rep, int nf,
                                               const std::vector<Mat>& omega) {
  const int n = rep.n();
  const Mat id_int = Mat::Identity(nf, nf);
  std::vector<Mat> conn = bochner_connection(rep, nf, omega);
  Mat z = Mat::Zero(omega[0].rows(), omega[0].cols());
  for (int mu = 0; mu < n; ++mu)
    z += kron(rep.gamma[mu], id_int) * (omega[std::size_t(mu)] - conn[std::size_t(mu)]);
  std::vector<Mat> w;
  w.reserve(static_cast<std::size_t>(n));
  for (int mu = 0; mu < n; ++mu) {
    Mat theta_mu = kron(rep.gamma_lower(mu), id_int) / double(n);
    w.push_back(conn[std::size_t(mu)] + theta_mu * z);
  }
  return w;
}

std::vector<std::vector<Mat>> connection_curvature_constant(const std::vector<Mat>& w) {
  const int n = int(w.size());
  std::vector<std::vector<Mat>> f(
      std::size_t(n), std::vector<Mat>(std::size_t(n), Mat::Zero(w[0].rows(), w[0].cols())));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      f[std::size_t(mu)][std::size_t(nu)] = commutator(w[std::size_t(mu)], w[std::size_t(nu)]);
  return f;
}

std::vector<std::vector<Mat>> lattice_connection_curvature(
    const Grid& grid, const std::function<std::vector<Mat>(long)>& w, long site) {
  const int n = grid.n;
  std::vector<Mat> w0 = w(site);
  std::vector<std::vector<Mat>> f(
      std::size_t(n), std::vector<Mat>(std::size_t(n), Mat::Zero(w0[0].rows(), w0[0].cols())));
  for (int mu = 0; mu < n; ++mu) {
    std::vector<Mat> plus = w(grid.shift(site, mu, +1));
    std::vector<Mat> minus = w(grid.shift(site, mu, -1));
    for (int nu = 0; nu < n; ++nu) {
      Mat d = (plus[std::size_t(nu)] - minus[std::size_t(nu)]) / (2.0 * grid.h[std::size_t(mu)]);
      f[std::size_t(mu)][std::size_t(nu)] += d;
      f[std::size_t(nu)][std::size_t(mu)] -= d;
    }
  }
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      f[std::size_t(mu)][std::size_t(nu)] += commutator(w0[std::size_t(mu)], w0[std::size_t(nu)]);
  return f;
}

void dump_operator(const LatticeOperator& op, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw lattice_error("cannot open dump path: " + path);
  out.precision(17);
  for (int k = 0; k < op.mat.outerSize(); ++k)
    for (SpMat::InnerIterator it(op.mat, k); it; ++it)
      out << it.row() << " " << it.col() << " " << it.value().real() << " "
          << it.value().imag() << "\n";
}

Vec dense_spectrum(const LatticeOperator& op) {
  Mat dense = Mat(op.mat);
  Eigen::ComplexEigenSolver<Mat> es(dense, false);
  return es.eigenvalues();
}

}  // namespace dirackit
