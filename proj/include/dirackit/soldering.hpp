#pragma once

#include "dirackit/gamma.hpp"
#include "dirackit/types.hpp"

namespace dirackit {

// Normalized soldering form Theta_mu = +(1/n) gamma_mu acting on the full
// fiber (spinor factor (x) identity).  Left multiplication ext_Theta is a
// right inverse of the Clifford contraction: gamma(ext_Theta(Z)) = sign * Z.
struct SolderingForm {
  const GammaRep* rep = nullptr;
  int internal_dim = 1;
  std::vector<Mat> coeff;  // Theta_mu on the full fiber, lower index

  int n() const { return rep->n(); }
  Eigen::Index fiber_dim() const { return Eigen::Index(rep->dim()) * internal_dim; }
};

SolderingForm make_soldering_form(const GammaRep& rep, int internal_dim = 1);

// ext_Theta on a zero-order fiber matrix: one-form with components Theta_mu Z
std::vector<Mat> ext_theta(const SolderingForm& theta, const Mat& z);

// Clifford contraction gamma(T) = gamma^mu T_mu of a one-form of fiber blocks
Mat gamma_contract(const GammaRep& rep, int internal_dim, const std::vector<Mat>& t);

// gamma(ext_Theta(gamma(T))): recovers the contraction of T (identity check)
Mat soldering_contract(const SolderingForm& theta, const std::vector<Mat>& t);

}  // namespace dirackit
