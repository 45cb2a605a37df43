#include "dirackit/tensor.hpp"

#include <algorithm>
#include <numeric>

#include "dirackit/rng.hpp"

namespace dirackit {

namespace {

// iterate over all index tuples of the given length
template <typename F>
void for_each_tuple(int n, int len, F&& f) {
  std::vector<int> idx(std::size_t(len), 0);
  while (true) {
    f(idx);
    int pos = len - 1;
    while (pos >= 0 && ++idx[std::size_t(pos)] == n) idx[std::size_t(pos--)] = 0;
    if (pos < 0) break;
  }
}

double factorial(int m) {
  double r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return r;
}

}  // namespace

int levi_civita(const std::vector<int>& indices) {
  const int m = int(indices.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (indices[std::size_t(i)] == indices[std::size_t(j)]) return 0;
  int s = 1;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (indices[std::size_t(i)] > indices[std::size_t(j)]) s = -s;
  return s;
}

IndexedTensor antisymmetrize(const IndexedTensor& t, const std::vector<int>& axes) {
  const int r = t.rank();
  const int m = int(axes.size());
  for (int a : axes)
    if (a < 0 || a >= r) throw invalid_tensor("antisymmetrize: axis out of range");
  IndexedTensor out(r, t.n());

  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> sorted = perm;
  do {
    std::vector<int> p(perm.begin(), perm.end());
    int sign = levi_civita(p);
    for_each_tuple(t.n(), r, [&](const std::vector<int>& idx) {
      std::vector<int> src = idx;
      for (int i = 0; i < m; ++i)
        src[std::size_t(axes[std::size_t(i)])] = idx[std::size_t(axes[std::size_t(p[std::size_t(i)])])];
      out.at(idx) += double(sign) * t.at(src);
    });
  } while (std::next_permutation(perm.begin(), perm.end()));
  const double norm = factorial(m);
  for (auto& c : out.data()) c /= norm;
  return out;
}

bool is_skew(const IndexedTensor& t, const std::vector<int>& axes, double tol) {
  IndexedTensor s = antisymmetrize(t, axes);
  double worst = 0;
  for (std::size_t i = 0; i < t.data().size(); ++i)
    worst = std::max(worst, std::abs(t.data()[i] - s.data()[i]));
  return worst <= tol * std::max(1.0, t.max_abs());
}

IndexedTensor random_admissible(int n, Rng& rng) {
  IndexedTensor t(n, n);
  for (auto& c : t.data()) c = rng.cnormal();
  std::vector<int> trailing(static_cast<std::size_t>(n - 1));
  std::iota(trailing.begin(), trailing.end(), 1);
  return antisymmetrize(t, trailing);
}

double verify_form1(const IndexedTensor& w) {
  const int n = w.rank();
  if (w.n() != n) throw invalid_tensor("form1 expects rank n over n indices");
  std::vector<int> trailing(static_cast<std::size_t>(n - 1));
  std::iota(trailing.begin(), trailing.end(), 1);
  if (!is_skew(w, trailing, 1e-10))
    throw invalid_tensor("form1 requires skew trailing indices");

  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  IndexedTensor skew = antisymmetrize(w, all);

  double worst = 0;
  for_each_tuple(n, n, [&](const std::vector<int>& idx) {
    Complex rhs = skew.at(idx);
    for (int j = 1; j < n; ++j) {
      std::vector<int> swapped = idx;
      std::swap(swapped[0], swapped[std::size_t(j)]);
      rhs += (w.at(idx) + w.at(swapped)) / double(n);
    }
    worst = std::max(worst, std::abs(w.at(idx) - rhs));
  });
  return worst;
}

double verify_form2(const GammaRep& rep, const IndexedTensor& w) {
  if (rep.convention_sign != +1)
    throw invalid_tensor("form identities are stated for the +2g convention");
  const int n = rep.n();
  const int d = rep.dim();
  if (w.rank() != n || w.n() != n) throw invalid_tensor("form2 expects a rank-n tensor");

  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  IndexedTensor skew = antisymmetrize(w, all);

  double worst = 0;
  std::vector<int> idx;
  for (int mu = 0; mu < n; ++mu) {
    Mat lhs = Mat::Zero(d, d);
    Mat t1 = Mat::Zero(d, d);
    Mat t2 = Mat::Zero(d, d);
    // n-1 gamma factors indexed (i1, i3, ..., in)
    for_each_tuple(n, n - 1, [&](const std::vector<int>& g) {
      Mat gm = Mat::Identity(d, d);
      for (int i : g) gm = gm * rep.gamma[i];
      idx.assign(1, g[0]);
      idx.push_back(mu);
      idx.insert(idx.end(), g.begin() + 1, g.end());
      lhs += gm * w.at(idx);  // w_{i1 mu i3..in}
      idx.assign(1, mu);
      idx.insert(idx.end(), g.begin(), g.end());
      t1 += gm * skew.at(idx);  // w_{[mu i1 i3..in]}
      t2 += gm * w.at(idx);     // w_{mu i1 i3..in}
    });
    Mat t3 = Mat::Zero(d, d);
    if (n >= 3) {
      for_each_tuple(n, n - 3, [&](const std::vector<int>& g) {
        Mat gm = Mat::Identity(d, d);
        for (int i : g) gm = gm * rep.gamma[i];
        for (int a = 0; a < n; ++a) {
          idx.assign(1, a);
          idx.push_back(a);
          idx.push_back(mu);
          idx.insert(idx.end(), g.begin(), g.end());
          t3 += gm * (w.at(idx) / rep.g(a));  // g^{ab} diagonal
        }
      });
    }
    const double nn = n;
    Mat rhs = -(nn / (nn - 1)) * t1 + (1.0 / (nn - 1)) * t2 - (nn - 2) * t3;
    worst = std::max(worst, max_abs(lhs - rhs));
  }
  return worst;
}

Form4Result contract_form4(const GammaRep& rep, const IndexedTensor& w) {
  if (rep.convention_sign != +1)
    throw invalid_tensor("form identities are stated for the +2g convention");
  const int n = rep.n();
  const int d = rep.dim();
  if (w.rank() != n || w.n() != n) throw invalid_tensor("form4 expects a rank-n tensor");
  std::vector<int> trailing(static_cast<std::size_t>(n - 1));
  std::iota(trailing.begin(), trailing.end(), 1);
  if (!is_skew(w, trailing, 1e-10))
    throw invalid_tensor("form4 requires skew trailing indices");

  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  IndexedTensor skew = antisymmetrize(w, all);

  Form4Result res;
  res.lhs = Mat::Zero(d, d);
  Mat r1 = Mat::Zero(d, d);
  for_each_tuple(n, n, [&](const std::vector<int>& g) {
    Mat gm = Mat::Identity(d, d);
    for (int i : g) gm = gm * rep.gamma[i];
    res.lhs += gm * w.at(g);
    r1 += gm * skew.at(g);
  });
  Mat r2 = Mat::Zero(d, d);
  std::vector<int> idx;
  for_each_tuple(n, n - 2, [&](const std::vector<int>& g) {
    Mat gm = Mat::Identity(d, d);
    for (int i : g) gm = gm * rep.gamma[i];
    for (int a = 0; a < n; ++a) {
      idx.assign(1, a);
      idx.push_back(a);
      idx.insert(idx.end(), g.begin(), g.end());
      r2 += gm * (w.at(idx) / rep.g(a));
    }
  });
  res.rhs = r1 + double(n - 1) * r2;
  res.residual = max_abs(res.lhs - res.rhs);
  return res;
}

}  // namespace dirackit
