#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dirackit/gamma.hpp"
#include "dirackit/soldering.hpp"
#include "dirackit/types.hpp"

namespace dirackit {

struct grading_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct not_simple_type : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Chart data of a Dirac-type operator D = gamma^mu (d_mu + omega_mu):
//   omega_mu = omegaCl_mu (x) 1 + 1 (x) A_mu + Theta_mu * Lambda(theta),
// Lambda(theta) = sum over strictly increasing blades of gamma(blade) (x)
// theta_blade.  Blades are keyed by bitmask over directions.
struct LocalDiracData {
  GammaRep rep;
  int nf = 1;                      // internal multiplicity N_F
  Mat chi;                         // internal grading, chi^2 = 1
  std::vector<Mat> gauge;          // A_mu, anti-Hermitian N_F x N_F (may be empty)
  std::map<std::uint32_t, Mat> theta;  // blade mask -> N_F x N_F coefficient
  RMat metric_point;               // g_{mu nu} at the point (general symmetric)
  std::vector<RMat> levi_civita;   // w^i_{jk} as n matrices [j](i,k); optional
  double r_m = 0.0;                // scalar curvature at the point

  Eigen::Index fiber_dim() const { return Eigen::Index(rep.dim()) * nf; }
  Mat grading() const { return kron(rep.chirality, chi); }
};

LocalDiracData make_local_data(const GammaRep& rep, int nf, const Mat& chi);

// co-frame gammas for a general nondegenerate symmetric metric g at a point:
// gamma_g^mu = S^mu_a gamma^a with S eta S^T = g^{-1}.  Degenerate g rejected.
std::vector<Mat> gamma_for_metric(const GammaRep& rep, const RMat& g);

// Lambda(theta) = sum_blades gamma(blade) (x) theta_blade on the full fiber
Mat theta_contraction(const LocalDiracData& d);

// the n assembled fiber matrices omega_mu; verifies that the Dirac-form and
// gauge parts produce an odd operator gamma^mu omega_mu w.r.t. the grading
std::vector<Mat> assemble_omega(const LocalDiracData& d, bool check_parity = true);

// Dirac-form part only (theta term), as full-fiber one-form coefficients
std::vector<Mat> dirac_form_part(const LocalDiracData& d);

// populate theta so that gamma^mu theta_mu = gamma_M (x) phi (phi chi-odd)
LocalDiracData make_simple_type(const GammaRep& rep, int nf, const Mat& chi,
                                const Mat& phi, const RMat& g);

struct SimpleTypeCheck {
  bool is_simple = false;
  double residual = 0.0;
};

// condition on the zero-order Dirac-form coefficients:
//   residual = max_i | 2 sign g^{ij} w_j + gamma^j [w_j, gamma^i] |
// (the sign factor makes the stated +2g-convention formula cover both
// Clifford conventions)
SimpleTypeCheck check_simple_type(const std::vector<Mat>& omega, const GammaRep& rep,
                                  int nf, const RMat& g, double tol = kSolveTol);

// unique chi-odd phi with gamma^mu omega_mu = gamma_M (x) phi; requires the
// simple-type condition to hold
Mat extract_phi(const std::vector<Mat>& omega, const GammaRep& rep, int nf,
                const Mat& chi, const RMat& g, double tol = kSolveTol);

// Orthonormal basis (as zero-order matrices Z, omega = Theta wedge Z) of the
// solution space of the simple-type condition over Gamma-odd Dirac forms,
// computed by dense nullspace.  Contract: span == { gamma_M (x) phi : phi odd }.
std::vector<Mat> simple_type_solution_space(const GammaRep& rep, int nf, const Mat& chi,
                                            const RMat& g);

// Dirac potential of the chart data, Lichnerowicz-split normalization:
//   V = (N/2) r_M + c1 * tr([g^i,g^j][th_i,th_j])
//              + c2 * g_{ij} tr(g^k[th_k,g^i] g^l[th_l,g^j])
// with th_mu the assembled Dirac-form coefficients. The constants c1 = 1/4
// and c2 = -sign/4 are pinned from the lattice oracle (regression-tested);
// the gauge potential A never enters.
double dirac_potential_analytic(const LocalDiracData& d);

// same evaluation for explicitly given Dirac-form coefficients
double dirac_potential_from_omega(const std::vector<Mat>& omega, const GammaRep& rep,
                                  int nf, const RMat& g, double r_m, double big_n);

inline constexpr double kPotentialC1 = 0.25;      // vs 1/2 in the printed formula
inline double potential_c2(int convention_sign) { // vs +1/8 in the printed formula
  return -0.25 * convention_sign;
}

}  // namespace dirackit
