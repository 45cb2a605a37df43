#pragma once

#include <string>
#include <vector>

#include "dirackit/types.hpp"

namespace dirackit {

struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Algebraic content of a Dirac triple at the fiber level: gauge Lie-algebra
// generators in the fermion and Higgs representations, the Yukawa map, and a
// vacuum section.  Generators are anti-Hermitian; the Yukawa map
//   G_Y : C^{N_H} -> { chi-odd anti-Hermitian N_F x N_F matrices }
// is stored as N_H "column" matrices plus N_H conjugate partners so that
//   G_Y(w) = sum_j Re/Im-linear combination; we keep it as a real-linear map
//   on (Re w, Im w) via 2*N_H basis images.
class FermionModel {
 public:
  std::string name;
  int nf = 0;  // fermion multiplicity
  int nh = 0;  // Higgs fiber dimension
  Mat chi;     // internal grading
  std::vector<Mat> gen_f;  // rho_F'(T_a), anti-Hermitian N_F x N_F
  std::vector<Mat> gen_h;  // rho_H'(T_a), anti-Hermitian N_H x N_H
  std::vector<Mat> yukawa_basis;  // images G_Y(e_j), j < N_H, and G_Y(i e_j), j >= N_H
  Vec vacuum;  // V in C^{N_H}

  int dim_g() const { return int(gen_f.size()); }

  // G_Y(w): real-linear in w (complex-linear models fill the i e_j images
  // accordingly)
  Mat yukawa(const Vec& w) const;

  // derived structure constants, least squares over the generator Gram matrix
  RMat structure_constants(double* residual = nullptr) const;

  // max equivariance defect |G_Y(rho_H(X)w) - [rho_F(X), G_Y(w)]| over
  // generators and probe vectors
  double yukawa_equivariance_residual(int probes, class Rng& rng) const;

  // throws model_error if closure or equivariance fail
  void validate(class Rng& rng) const;
};

// plain-text sectioned key-value serialization (versioned header line)
std::string serialize_model(const FermionModel& m);
FermionModel parse_model(const std::string& text);
void save_model(const FermionModel& m, const std::string& path);
FermionModel load_model(const std::string& path);

// electroweak lepton fixture: SU(2)xU(1), N_F = (2 left, 1 right),
// hypercharges Y_L = -1, Y_R = -2, Y_H = +1, Yukawa constant y, vacuum (0,v)
FermionModel electroweak_model(double y = 1.0, double v = 1.0);

// abelian fixture: U(1) with a charged scalar, N_F = 2
FermionModel abelian_higgs_model(double y = 1.0, double v = 1.0, double charge = 1.0);

// random model for property suites: random rho_H built from su(2) spin
// blocks and u(1) charges conjugated by a random unitary; rho_F in the
// "lepton pattern" (rho_H + character) (+) character so the Yukawa map is
// exactly equivariant.  N_F = N_H + 1 <= cap.
FermionModel random_model(class Rng& rng, int max_nf = 6);

}  // namespace dirackit
