#include "dirackit/soldering.hpp"

namespace dirackit {

SolderingForm make_soldering_form(const GammaRep& rep, int internal_dim) {
  SolderingForm th;
  th.rep = &rep;
  th.internal_dim = internal_dim;
  const int n = rep.n();
  const Mat id_int = Mat::Identity(internal_dim, internal_dim);
  th.coeff.reserve(n);
  for (int mu = 0; mu < n; ++mu)
    th.coeff.push_back(kron(rep.gamma_lower(mu), id_int) / double(n));
  return th;
}

std::vector<Mat> ext_theta(const SolderingForm& theta, const Mat& z) {
  std::vector<Mat> out;
  out.reserve(theta.coeff.size());
  for (const Mat& th : theta.coeff) out.push_back(th * z);
  return out;
}

Mat gamma_contract(const GammaRep& rep, int internal_dim, const std::vector<Mat>& t) {
  const Mat id_int = Mat::Identity(internal_dim, internal_dim);
  Mat out = Mat::Zero(t[0].rows(), t[0].cols());
  for (int mu = 0; mu < rep.n(); ++mu)
    out += kron(rep.gamma[mu], id_int) * t[mu];
  return out;
}

Mat soldering_contract(const SolderingForm& theta, const std::vector<Mat>& t) {
  Mat z = gamma_contract(*theta.rep, theta.internal_dim, t);
  return gamma_contract(*theta.rep, theta.internal_dim, ext_theta(theta, z));
}

}  // namespace dirackit
