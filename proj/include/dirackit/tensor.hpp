#pragma once

#include <vector>

#include "dirackit/gamma.hpp"
#include "dirackit/types.hpp"

namespace dirackit {

struct invalid_tensor : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Dense rank-r tensor over indices 0..n-1 with complex entries, row-major.
class IndexedTensor {
 public:
  IndexedTensor() = default;
  IndexedTensor(int rank, int n)
      : rank_(rank), n_(n), data_(std::size_t(ipow(n, rank)), Complex(0, 0)) {}

  int rank() const { return rank_; }
  int n() const { return n_; }

  Complex& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  Complex at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

  std::vector<Complex>& data() { return data_; }
  const std::vector<Complex>& data() const { return data_; }

  double max_abs() const {
    double m = 0;
    for (const auto& c : data_) m = std::max(m, std::abs(c));
    return m;
  }

  static std::size_t ipow(int b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= std::size_t(b);
    return r;
  }

  std::size_t offset(const std::vector<int>& idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * std::size_t(n_) + std::size_t(i);
    return o;
  }

 private:
  int rank_ = 0;
  int n_ = 0;
  std::vector<Complex> data_;
};

// permutation sign of 0-based indices; 0 on repeats
int levi_civita(const std::vector<int>& indices);

// (1/m!) signed sum over permutations of the given axis subset
IndexedTensor antisymmetrize(const IndexedTensor& t, const std::vector<int>& axes);

// true if t is already skew in the given axes (within tol)
bool is_skew(const IndexedTensor& t, const std::vector<int>& axes, double tol = 1e-12);

// random rank-n tensor skew in the trailing n-1 indices (the Appendix class)
IndexedTensor random_admissible(int n, class Rng& rng);

// residual of the index decomposition identity for a rank-n tensor skew in
// its trailing indices:
//   w_{i1..in} = w_{[i1..in]} + (1/n) sum_{j>=2} ( w_{i1..in} + w_{i1<->ij} )
double verify_form1(const IndexedTensor& w);

// residual of the gamma-weighted decomposition with one index held fixed;
// evaluated as 2^k x 2^k matrices, maximized over the free index.
double verify_form2(const GammaRep& rep, const IndexedTensor& w);

struct Form4Result {
  Mat lhs;       // naive iterated contraction gamma(w)
  Mat rhs;       // fully-skew term + (n-1) g-contracted term
  double residual;
};

// two-term contraction identity for gamma(w)
Form4Result contract_form4(const GammaRep& rep, const IndexedTensor& w);

}  // namespace dirackit
