#pragma once

#include <optional>

#include "dirackit/fermion_model.hpp"
#include "dirackit/gamma.hpp"
#include "dirackit/lattice.hpp"
#include "dirackit/types.hpp"

namespace dirackit {

// Total fermionic mass operator M_F = -i gamma_M (x) G_Y(V) with its spectrum.
struct MassOperator {
  Mat matrix;          // Hermitian, on the full fiber 2^k N_F
  RVec eigenvalues;    // sorted ascending
  Mat internal;        // G_Y(V), anti-Hermitian chi-odd
};

MassOperator fermionic_mass_operator(const FermionModel& m, const GammaRep& rep);

struct EigenbundleSplit {
  std::vector<double> masses_squared;  // distinct eigenvalues of M_F^2, ascending
  std::vector<Mat> projectors;         // orthogonal, sum to identity
  std::vector<int> internal_mult;      // fiber dim / 2^k per block
  int kernel_index = -1;               // block of m^2 = 0, or -1
};

EigenbundleSplit eigenbundle_split(const MassOperator& mf, const GammaRep& rep,
                                   double degeneracy_tol = 1e-8);

struct IsotropyResult {
  RMat basis;          // columns: coefficient vectors in the generator basis
  int dim = 0;
  int goldstone_count = 0;
};

// h = { X in Lie(G) : rho_H(X) V = 0 }, real nullspace of X -> rho_H(X)V
IsotropyResult isotropy_algebra(const FermionModel& m);

// squared Yang-Mills mass matrix
//   M2(T_a,T_b) = 2 |G_Y|^2 < V, {h_a, h_b} V >,  h_a = i rho_H(T_a),
// PSD with rank = Goldstone count ("Higgs dinner").  |G_Y| is the spectral
// norm of G_Y at the normalized vacuum.
RMat ym_mass_matrix(const FermionModel& m);

double yukawa_norm(const FermionModel& m);

struct GoldstoneSplit {
  // real-linear subspaces of C^{N_H} ~= R^{2 N_H}, as real 2N_H x k bases
  RMat goldstone;   // span { rho_H(T_a) V }
  RMat physical;    // orthogonal complement
};

GoldstoneSplit goldstone_split(const FermionModel& m);

struct CompatibilityResult {
  double deficit = 0.0;     // sum_mu |[rho_F(A_mu), M_F]|_F^2
  double ym_quadratic = 0.0;  // M^2_YM(A, A) summed over directions
  double ratio = 0.0;         // deficit / ym_quadratic when the latter is nonzero
};

CompatibilityResult compatibility_deficit(const FermionModel& m, const GammaRep& rep,
                                          const std::vector<RVec>& a_coeffs);

// <M_F^2> = (1/N_F) sum of internal squared masses
double vacuum_potential(const FermionModel& m, const GammaRep& rep);

// orbit alignment: find g = exp(sum c_a T_a) with rho_H(g) phi/|phi| ~ V/|V|;
// gradient ascent on Re<Vhat, rho_H(g) phihat>; empty optional if no
// convergence (non-transitive action)
std::optional<Mat> unitary_gauge_transformation(const FermionModel& m, const Vec& phi,
                                                double tol = 1e-8, int max_iter = 4000);

struct CurvatureDecomposition {
  double residual_total = 0.0;      // |F_lattice - F_predicted| max over components
  double residual_gauge = 0.0;      // after removing the gauge curvature term
  double residual_mass = 0.0;       // after removing the mass two-form term
  double residual_cross = 0.0;      // after removing the Theta wedge dA(M) term
  double mass_term_reduction = 0.0; // |F_mass-family - ext_Theta(mu_F)| at phi_H = 0
};

// verify, at the fiber level with constant fields, that the curvature of the
// Dirac connection of D = slash_D + gamma(A_fl) splits into gauge curvature +
// mass two-form + Theta wedge covariant-derivative-of-mass terms
CurvatureDecomposition curvature_decomposition_check(const FermionModel& m,
                                                     const GammaRep& rep,
                                                     const std::vector<RVec>& a_coeffs,
                                                     const Vec& phi_h);

}  // namespace dirackit
