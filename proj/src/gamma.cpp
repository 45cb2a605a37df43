#include "dirackit/gamma.hpp"

#include <bit>

namespace dirackit {

namespace {

Mat pauli(int which) {
  Mat m(2, 2);
  switch (which) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

GammaRep build_gamma_rep(Signature sig, int convention_sign) {
  if (convention_sign != 1 && convention_sign != -1)
    throw invalid_signature("convention_sign must be +1 or -1");
  const int n = sig.n();
  const int k = sig.k();
  const int d = sig.fiber_dim();

  GammaRep rep;
  rep.sig = sig;
  rep.convention_sign = convention_sign;
  rep.metric_diag = RVec(n);
  for (int mu = 0; mu < n; ++mu) rep.metric_diag(mu) = mu < sig.p ? 1.0 : -1.0;

  // Brauer-Weyl tensor products: generator 2j   = s3^j (x) s1 (x) 1^(k-j-1)
  //                              generator 2j+1 = s3^j (x) s2 (x) 1^(k-j-1)
  // These square to +1 and pairwise anticommute; directions with
  // convention_sign*g^{mumu} = -1 pick up a factor i.
  const Mat s1 = pauli(1), s2 = pauli(2), s3 = pauli(3), i2 = Mat::Identity(2, 2);
  rep.gamma.reserve(n);
  for (int mu = 0; mu < n; ++mu) {
    const int j = mu / 2;
    Mat g = Mat::Identity(1, 1);
    for (int t = 0; t < j; ++t) g = kron(g, s3);
    g = kron(g, mu % 2 == 0 ? s1 : s2);
    for (int t = j + 1; t < k; ++t) g = kron(g, i2);
    const double target = convention_sign * rep.metric_diag(mu);
    if (target < 0) g *= Complex(0, 1);
    rep.gamma.push_back(std::move(g));
  }

  // top blade, phase-normalized to a Hermitian involution
  Mat top = Mat::Identity(d, d);
  for (int mu = 0; mu < n; ++mu) top = top * rep.gamma[mu];
  const Complex c = (top * top)(0, 0);  // top^2 = c * 1 with c = +-1
  if (std::abs(c.real() - 1.0) < 1e-9) {
    rep.chirality_phase = 1.0;
  } else if (std::abs(c.real() + 1.0) < 1e-9) {
    rep.chirality_phase = Complex(0, 1);
  } else {
    throw std::logic_error("top blade square is not +-1");
  }
  rep.chirality = rep.chirality_phase * top;
  if (max_abs(rep.chirality - rep.chirality.adjoint().eval()) > 1e-12)
    rep.chirality = -rep.chirality, rep.chirality_phase = -rep.chirality_phase;
  return rep;
}

Mat gamma_of_blade(const GammaRep& rep, const std::vector<int>& indices) {
  std::uint32_t mask = 0;
  int prev = -1;
  for (int i : indices) {
    if (i < 0 || i >= rep.n()) throw invalid_blade("blade index out of range");
    if (i <= prev) throw invalid_blade("blade indices must be strictly increasing");
    prev = i;
    mask |= (1u << i);
  }
  return gamma_of_blade_mask(rep, mask);
}

Mat gamma_of_blade_mask(const GammaRep& rep, std::uint32_t mask) {
  const int d = rep.dim();
  Mat m = Mat::Identity(d, d);
  for (int i = 0; i < rep.n(); ++i)
    if (mask & (1u << i)) m = m * rep.gamma[i];
  return m;
}

CliffordElement chirality_element(const GammaRep& rep) {
  return decompose(rep, rep.chirality);
}

CliffordElement decompose(const GammaRep& rep, const Mat& x) {
  const int n = rep.n();
  const int d = rep.dim();
  CliffordElement el;
  el.matrix = x;
  el.blade_coeffs = Vec(1u << n);
  for (std::uint32_t b = 0; b < (1u << n); ++b) {
    Mat gb = gamma_of_blade_mask(rep, b);
    el.blade_coeffs(b) = (gb.adjoint() * x).trace() / static_cast<double>(d);
  }
  return el;
}

Mat grade_project(const GammaRep& rep, const Mat& x, int grade) {
  if (grade < 0 || grade > rep.n()) throw invalid_blade("grade out of range");
  CliffordElement el = decompose(rep, x);
  const int d = rep.dim();
  Mat out = Mat::Zero(d, d);
  for (std::uint32_t b = 0; b < (1u << rep.n()); ++b)
    if (std::popcount(b) == grade)
      out += el.blade_coeffs(b) * gamma_of_blade_mask(rep, b);
  return out;
}

CliffordElement grade_project(const GammaRep& rep, const CliffordElement& x, int grade) {
  return decompose(rep, grade_project(rep, x.matrix, grade));
}

Mat gamma_of_two_form(const GammaRep& rep, const std::vector<std::vector<Mat>>& f) {
  const int n = rep.n();
  const Eigen::Index bd = f[0][1].rows();
  const int sd = rep.dim();
  // f entries are either full-fiber blocks (dim divisible by 2^k, gammas act
  // on the spinor factor already) or internal blocks to be kron'd in.
  const bool full = bd % sd == 0 && bd >= sd;
  Mat out = full ? Mat::Zero(bd, bd) : Mat::Zero(sd * bd, sd * bd);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      if (full) {
        const Eigen::Index nf = bd / sd;
        out += kron(rep.gamma[mu] * rep.gamma[nu], Mat::Identity(nf, nf)) * f[mu][nu];
      } else {
        out += kron(rep.gamma[mu] * rep.gamma[nu], f[mu][nu]);
      }
    }
  return out;
}

double clifford_residual(const GammaRep& rep) {
  const int n = rep.n();
  const int d = rep.dim();
  double worst = 0;
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu; nu < n; ++nu) {
      const double g = mu == nu ? rep.metric_diag(mu) : 0.0;
      Mat r = anticommutator(rep.gamma[mu], rep.gamma[nu]) -
              rep.convention_sign * 2.0 * g * Mat::Identity(d, d);
      worst = std::max(worst, max_abs(r));
    }
  return worst;
}

}  // namespace dirackit
