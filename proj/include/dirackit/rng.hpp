#pragma once

#include <cstdint>
#include <string_view>

#include "dirackit/types.hpp"

namespace dirackit {

// Deterministic generator (xoshiro-free splitmix core). All pseudo-randomness
// in the engine flows through this type so that a fixed seed reproduces every
// report byte-for-byte. Per-check streams are derived by hashing the check
// name, so adding a check never perturbs existing ones.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

  // Box-Muller; spare value cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 1e-300) u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  Complex cnormal() { double re = normal(); double im = normal(); return {re, im}; }

  Mat random_matrix(Eigen::Index rows, Eigen::Index cols) {
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cnormal();
    return m;
  }

  Mat random_anti_hermitian(Eigen::Index d) {
    Mat m = random_matrix(d, d);
    return 0.5 * (m - m.adjoint().eval());
  }

  Mat random_hermitian(Eigen::Index d) {
    Mat m = random_matrix(d, d);
    return 0.5 * (m + m.adjoint().eval());
  }

  Mat random_unitary(Eigen::Index d) {
    Eigen::HouseholderQR<Mat> qr(random_matrix(d, d));
    Mat q = qr.householderQ() * Mat::Identity(d, d);
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
      Complex rjj = r(j, j);
      q.col(j) *= (std::abs(rjj) > 0 ? rjj / std::abs(rjj) : Complex(1, 0));
    }
    return q;
  }

  Vec random_vector(Eigen::Index d) {
    Vec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = cnormal();
    return v;
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// FNV-1a, stable across platforms; used to derive per-check sub-seeds.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline Rng sub_rng(std::uint64_t global_seed, std::string_view check_name) {
  return Rng(global_seed ^ fnv1a64(check_name));
}

}  // namespace dirackit
