#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>

namespace dirackit {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<Complex>;

inline constexpr double kAlgebraTol = 1e-12;  // exact fiber-level identities
inline constexpr double kSolveTol = 1e-10;    // linear-solve backed identities
inline constexpr double kLatticeTol = 1e-8;   // exact-at-lattice identities

// Kronecker product (kept local; no unsupported Eigen modules).
inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }
inline Mat anticommutator(const Mat& a, const Mat& b) { return a * b + b * a; }

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace dirackit
