#pragma once

#include "dirackit/fermion_model.hpp"
#include "dirackit/gamma.hpp"
#include "dirackit/lattice.hpp"
#include "dirackit/symmetry.hpp"
#include "dirackit/types.hpp"

namespace dirackit {

enum class SignatureKind { Euclidean, Lorentzian };

// chirality/doubling projector family on the fiber 2^k x N_F
struct DoubledFiber {
  Mat pi_r, pi_l;    // (1 +- gamma_M (x) 1)/2
  Mat rho_r, rho_l;  // (1 +- 1 (x) chi)/2
  Mat pi_ll, pi_rr, pi_rl, pi_lr;
  Mat pi_plus, pi_minus;  // physical / unphysical
};

DoubledFiber make_doubled_fiber(const GammaRep& rep, const Mat& chi);

// antilinear charge conjugation C_J(z) = J conj(z).  On the base fiber J is a
// gamma intertwiner (J conj(gamma^mu) J^-1 = eta gamma^mu); j_squared records
// J conj(J) = +-1.  The doubled-space matrix always squares to +1.
struct RealStructure {
  Mat j;          // base fiber
  int eta = +1;   // intertwining sign
  int j_squared = +1;
  Mat j_doubled;  // 2d x 2d, involutive with conjugation
};

RealStructure make_real_structure(const GammaRep& rep, int nf, int eta = +1);

// D_bar = J conj(D) J^-1 (matrix of C_J D C_J^{-1})
Mat charge_conjugate(const Mat& d, const RealStructure& rs);

// signature-dependent Hermitian pairing: Lorentzian pairs opposite
// chiralities, Euclidean is the plain Hermitian product.  Chirality is
// measured by the total grading Gamma.
Complex pairing(const Vec& z1, const Vec& z2, const Mat& grading, SignatureKind kind);

// <psi, D_+ psi> with D_+ = pi_- D pi_+; requires D odd w.r.t. the grading
Complex fermionic_lagrangian(const Mat& d, const Vec& psi, const Mat& grading,
                             SignatureKind kind);

// lattice variant: sum over sites times the volume element
Complex fermionic_lagrangian(const LatticeOperator& d, const Vec& psi, const Mat& grading,
                             SignatureKind kind);

// doubled-fiber Pauli-Dirac operator D_P = diag(D,D) + I (x) gamma(F) in the
// diagonal-grading picture; F given as a two-form of base-fiber blocks
Mat build_pauli_dirac(const Mat& d, const GammaRep& rep, int nf,
                      const std::vector<std::vector<Mat>>& f);

// |<Psi, D_P Psi> - <psi, D psi>| for the diagonal section Psi = (psi,psi)/sqrt(2)
double pauli_cancellation_check(const Mat& d, const Mat& d_p, const Vec& psi,
                                const Mat& grading, SignatureKind kind);

struct LagrangianSplit {
  double eh_coefficient = 0.0;      // coefficient of r_M (analytic channel)
  double ym_quadratic = 0.0;        // V(s) = ym_quadratic s^2 for the gauge family
  double ym_fit_residual = 0.0;     // max deviation from pure quadratic
  double higgs_quadratic = 0.0;     // V(t) = a t^2 + b t^4 for the Higgs family
  double higgs_quartic = 0.0;
  double higgs_fit_residual = 0.0;
  double higgs_min_radius = 0.0;    // sqrt(-a/2b) when a<0<b, else 0
  double kinetic_quadratic = 0.0;   // V(k) - V(0) = c k^2 for linearly varying phi
  double kinetic_fit_residual = 0.0;
};

// polynomial structure of V_D(D_P) over the three field families of the
// Einstein-Hilbert / Yang-Mills / Higgs decomposition
LagrangianSplit lagrangian_split(const FermionModel& m, const GammaRep& rep,
                                 double r_m_input = 1.0);

// Hessian of the Pauli-Dirac Higgs potential on R^{2 N_H}, evaluated at the
// potential minimum along the vacuum direction; kernel = Goldstone directions
RMat higgs_mass_operator(const FermionModel& m, const GammaRep& rep);

// Pauli-Dirac potential of the constant-phi configuration (quartic in phi)
double pauli_higgs_potential(const FermionModel& m, const GammaRep& rep, const Vec& phi);

struct MassSpectrumReport {
  std::vector<double> fermion_masses;  // distinct |m|, ascending
  int kernel_internal_mult = 0;
  int little_group_dim = 0;
  int goldstone_count = 0;
  int ym_rank = 0;
  double pauli_cancellation = 0.0;
  double ym_fit_residual = 0.0;
  double higgs_fit_residual = 0.0;
  double higgs_min_radius = 0.0;
  bool pass = false;
};

// end-to-end electroweak demo
MassSpectrumReport sm_lepton_demo(double y = 1.0, double v = 1.0, std::uint64_t seed = 42);

}  // namespace dirackit
