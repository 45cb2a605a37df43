#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dirackit/dirac_local.hpp"
#include "dirackit/gamma.hpp"
#include "dirackit/types.hpp"

namespace dirackit {

struct lattice_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Periodic grid, row-major site indexing, uniform spacing per direction.
struct Grid {
  int n = 2;
  std::vector<int> extent;   // sites per direction, >= 4
  std::vector<double> h;     // spacing per direction

  static constexpr long kMaxEntries = 1L << 26;

  Grid() = default;
  Grid(std::vector<int> ext, std::vector<double> spacing)
      : n(int(ext.size())), extent(std::move(ext)), h(std::move(spacing)) {
    for (int l : extent)
      if (l < 4) throw lattice_error("grid needs at least 4 sites per direction");
    if (h.size() != extent.size()) throw lattice_error("extent/spacing mismatch");
  }

  long sites() const {
    long s = 1;
    for (int l : extent) s *= l;
    return s;
  }

  long index(const std::vector<int>& coord) const {
    long idx = 0;
    for (int d = 0; d < n; ++d) idx = idx * extent[std::size_t(d)] + coord[std::size_t(d)];
    return idx;
  }

  std::vector<int> coord(long idx) const {
    std::vector<int> c(static_cast<std::size_t>(n));
    for (int d = n - 1; d >= 0; --d) {
      c[std::size_t(d)] = int(idx % extent[std::size_t(d)]);
      idx /= extent[std::size_t(d)];
    }
    return c;
  }

  long shift(long idx, int dir, int step) const {
    std::vector<int> c = coord(idx);
    int l = extent[std::size_t(dir)];
    c[std::size_t(dir)] = ((c[std::size_t(dir)] + step) % l + l) % l;
    return index(c);
  }
};

// Sparse realization of a lattice operator over (sites x fiber).
struct LatticeOperator {
  Grid grid;
  int fiber = 1;
  SpMat mat;

  long dim() const { return grid.sites() * fiber; }
};

// generic first-order operator sum_mu principal_mu * centraldiff_mu + Z(x)
LatticeOperator build_first_order(const Grid& grid, const std::vector<Mat>& principal,
                                  const std::function<Mat(long)>& zero_order);

// Per-site chart data of a Dirac operator: omega(site) returns the
// coefficient matrices omega_mu(x); D = sum_mu gamma^mu (d_mu + omega_mu(x))
// on a flat orthonormal chart with periodic wrap.
struct LatticeFields {
  std::function<std::vector<Mat>(long site)> omega;  // null for the free operator
};

LatticeOperator build_lattice_dirac(const GammaRep& rep, int nf, const Grid& grid,
                                    const LatticeFields& fields);

// site-diagonal multiplication operator
LatticeOperator site_diagonal(const Grid& grid, int fiber,
                              const std::function<Mat(long)>& block);

// Bochner connection of a first-order operator with principal symbols
// principal_mu and zero-order Z: Omega^mu = (sign/2) {principal^mu, Z};
// returns lower-index components for the diagonal metric.
std::vector<Mat> bochner_connection_z(const std::vector<Mat>& principal,
                                      const RVec& metric_diag, int sign, const Mat& z);

// convenience for Dirac chart data omega_mu
std::vector<Mat> bochner_connection(const GammaRep& rep, int nf,
                                    const std::vector<Mat>& omega);

// Bochner Laplacian candidate sign * g^{mu nu} (d_mu + Om_mu)(d_nu + Om_nu)
// assembled as a product of sparse first-order factors.
LatticeOperator build_bochner_laplacian(const Grid& grid, int fiber, const RVec& metric_diag,
                                        int sign,
                                        const std::function<std::vector<Mat>(long)>& conn);

struct BlwSplit {
  // per-site remainder: site-diagonal block plus the symmetric part of the
  // nearest-neighbour hops (central differencing smears zero-order content
  // onto the hops for varying coefficients; symmetrization recovers it)
  std::vector<Mat> e_blocks;
  // residual first-order coefficient, derivative-normalized:
  // max over sites/directions of |h_mu (hop+ - hop-) / 2|; identically zero
  // for constant coefficients, O(h^2) under refinement otherwise
  double first_order_residual = 0.0;
  // any content beyond nearest-neighbour hops (cancels exactly; roundoff)
  double structural_residual = 0.0;
};

BlwSplit blw_split(const LatticeOperator& d, const LatticeOperator& delta);

// V(x) = tr E(x)
std::vector<double> dirac_potential_numeric(const BlwSplit& split);

// conjugate by a site-diagonal internal unitary (x) identity on the spinor
// factor (an inner Yang-Mills gauge transformation)
LatticeOperator gauge_transform(const LatticeOperator& d, const GammaRep& rep, int nf,
                                const std::function<Mat(long)>& u_internal);

// chart descriptor for scalar curvature: flat, or 2D conformal e^{2 sigma}
struct ChartDescriptor {
  enum class Kind { Flat, Conformal2D } kind = Kind::Flat;
  std::function<double(double, double)> sigma;  // used by Conformal2D
};

// r_M at a site by central differences: flat -> 0; 2D conformal ->
// -2 e^{-2 sigma} (Laplacian sigma)
double scalar_curvature(const ChartDescriptor& chart, const Grid& grid, long site);

struct DalambertResult {
  bool compatible = false;
  double deficit = 0.0;     // Frobenius norm of D^2 - (slashA^2 - M^2)
  double commutator = 0.0;  // max_mu |[A_mu, M_internal]|
};

// compatibility condition: D = slash_A + i M_F squares to slashA^2 - M_F^2
// iff the connection commutes with the mass operator
DalambertResult dalambert_check(const GammaRep& rep, int nf, const Grid& grid,
                                const std::vector<Mat>& a_internal, const Mat& m_internal,
                                double tol = kLatticeTol);

// continuum remainder of a first-order operator at a point, from the local
// jet: E = principal^mu dZ_mu + Z^2 - sign (g^{mu nu} dOm_mu nu + Om^mu Om_mu)
Mat pointwise_blw_remainder(const std::vector<Mat>& principal, const RVec& metric_diag,
                            int sign, const Mat& z, const std::vector<Mat>& dz);

// exact constant-coefficient remainder (dz = 0)
Mat constant_blw_remainder(const GammaRep& rep, int nf, const std::vector<Mat>& omega);

// coefficients W_mu of the Dirac connection of D = gamma^mu(d_mu + omega_mu):
// W_mu = BochnerConn_mu + Theta_mu * gamma^nu (omega_nu - BochnerConn_nu)
std::vector<Mat> dirac_connection_coefficients(const GammaRep& rep, int nf,
                                               const std::vector<Mat>& omega);

// curvature two-form F_{mu nu} = [W_mu, W_nu] of a constant connection
std::vector<std::vector<Mat>> connection_curvature_constant(const std::vector<Mat>& w);

// lattice curvature of a site-dependent connection via central differences:
// F_{mu nu}(x) = d_mu W_nu - d_nu W_mu + [W_mu, W_nu]
std::vector<std::vector<Mat>> lattice_connection_curvature(
    const Grid& grid, const std::function<std::vector<Mat>(long)>& w, long site);

// sparse triplet text dump: "row col re im" per line
void dump_operator(const LatticeOperator& op, const std::string& path);

// eigenvalues of the dense realization (desk scale only)
Vec dense_spectrum(const LatticeOperator& op);

}  // namespace dirackit
