#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dirackit/types.hpp"

namespace dirackit {

struct invalid_signature : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct invalid_blade : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Metric signature (p,q): p directions squaring to +1, q to -1, n = p+q even.
struct Signature {
  int p = 0;
  int q = 0;

  Signature() = default;
  Signature(int p_, int q_) : p(p_), q(q_) {
    if (p < 0 || q < 0 || n() < 2 || n() % 2 != 0)
      throw invalid_signature("signature requires even n = p+q >= 2, p,q >= 0");
  }

  int n() const { return p + q; }
  int k() const { return n() / 2; }
  int s() const { return p - q; }
  int fiber_dim() const { return 1 << k(); }  // 2^k
};

// Concrete matrix representation of the complexified Clifford algebra
// Cl(p,q) on C^{2^k}.  gamma[mu] are the co-frame matrices gamma^mu with
//   gamma^mu gamma^nu + gamma^nu gamma^mu = convention_sign * 2 g^{mu nu} 1,
// g = diag(+1 x p, -1 x q).  chirality is the phase-normalized top blade:
// Hermitian, squares to +1, anticommutes with every gamma^mu.
struct GammaRep {
  Signature sig;
  int convention_sign = +1;
  RVec metric_diag;          // g^{mumu} = g_{mumu} (orthonormal frame)
  std::vector<Mat> gamma;    // n matrices, each 2^k x 2^k
  Mat chirality;
  Complex chirality_phase;   // chirality = phase * gamma^1...gamma^n

  int n() const { return sig.n(); }
  int dim() const { return sig.fiber_dim(); }
  double g(int mu) const { return metric_diag(mu); }

  Mat gamma_lower(int mu) const { return metric_diag(mu) * gamma[mu]; }
};

// Dense element of the represented algebra together with its blade expansion.
// Blades are indexed by bitmask; coefficient(b) reconstructs the matrix:
//   X = sum_b coeff(b) * gamma(b),  gamma(b) = product of gamma^i, i in b.
struct CliffordElement {
  Mat matrix;
  Vec blade_coeffs;  // size 2^n, Frobenius projection onto the blade basis
};

GammaRep build_gamma_rep(Signature sig, int convention_sign = +1);

// product gamma^{i_1}...gamma^{i_m} for a strictly increasing 0-based index
// set; empty set gives the identity.
Mat gamma_of_blade(const GammaRep& rep, const std::vector<int>& indices);
Mat gamma_of_blade_mask(const GammaRep& rep, std::uint32_t mask);

CliffordElement chirality_element(const GammaRep& rep);

// Blade-basis decomposition; exact because distinct blades are
// Frobenius-orthogonal and each has squared norm 2^k.
CliffordElement decompose(const GammaRep& rep, const Mat& x);

CliffordElement grade_project(const GammaRep& rep, const CliffordElement& x, int grade);
Mat grade_project(const GammaRep& rep, const Mat& x, int grade);

// gamma(two-form): sum_{mu<nu} gamma^mu gamma^nu F_{mu nu} for a skew matrix
// of fiber blocks F (used by the Pauli term and curvature checks).
Mat gamma_of_two_form(const GammaRep& rep, const std::vector<std::vector<Mat>>& f);

// max anticommutator residual |{gamma^mu,gamma^nu} - sign*2g^{mu nu}| over all pairs
double clifford_residual(const GammaRep& rep);

}  // namespace dirackit
