#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirackit/rng.hpp"
#include "dirackit/tensor.hpp"

using namespace dirackit;

TEST_CASE("levi-civita basics") {
  CHECK(levi_civita({0, 1, 2, 3}) == 1);
  CHECK(levi_civita({1, 0, 2, 3}) == -1);
  CHECK(levi_civita({0, 0, 2, 3}) == 0);
  CHECK(levi_civita({2, 0, 1}) == 1);
}

TEST_CASE("antisymmetrize kills symmetric tensors and fixes skew ones") {
  Rng rng(3);
  IndexedTensor t(2, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Complex v = rng.cnormal();
      t.at({i, j}) = v;
      t.at({j, i}) = v;
    }
  IndexedTensor a = antisymmetrize(t, {0, 1});
  CHECK(a.max_abs() < 1e-14);

  IndexedTensor s(2, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i < j) {
        Complex v = rng.cnormal();
        s.at({i, j}) = v;
        s.at({j, i}) = -v;
      }
    }
  IndexedTensor a2 = antisymmetrize(s, {0, 1});
  for (std::size_t i = 0; i < s.data().size(); ++i)
    CHECK(std::abs(a2.data()[i] - s.data()[i]) < 1e-14);
}

TEST_CASE("antisymmetrize matches the explicit six-term sum at rank 3") {
  Rng rng(5);
  IndexedTensor t(3, 3);
  for (auto& c : t.data()) c = rng.cnormal();
  IndexedTensor a = antisymmetrize(t, {0, 1, 2});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        Complex want = (t.at({i, j, k}) - t.at({i, k, j}) + t.at({j, k, i}) -
                        t.at({j, i, k}) + t.at({k, i, j}) - t.at({k, j, i})) /
                       6.0;
        CHECK(std::abs(a.at({i, j, k}) - want) < 1e-14);
      }
}

TEST_CASE("form1 holds for admissible tensors") {
  Rng rng(7);
  for (int n : {2, 4}) {
    for (int t = 0; t < 50; ++t) {
      IndexedTensor w = random_admissible(n, rng);
      CHECK(verify_form1(w) < 1e-12);
    }
  }
}

TEST_CASE("form1 rejects non-skew input") {
  Rng rng(9);
  IndexedTensor w(4, 4);
  for (auto& c : w.data()) c = rng.cnormal();
  CHECK_THROWS_AS(verify_form1(w), invalid_tensor);
}

TEST_CASE("form2 holds for both signatures at n in {2,4}") {
  Rng rng(11);
  for (int n : {2, 4}) {
    for (int p : {n, n - 1}) {
      GammaRep rep = build_gamma_rep(Signature(p, n - p), +1);
      for (int t = 0; t < 25; ++t) {
        IndexedTensor w = random_admissible(n, rng);
        CHECK(verify_form2(rep, w) < 1e-10);
      }
    }
  }
}

TEST_CASE("form2 requires the +2g convention") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), -1);
  Rng rng(13);
  IndexedTensor w = random_admissible(2, rng);
  CHECK_THROWS_AS(verify_form2(rep, w), invalid_tensor);
}

TEST_CASE("form4 holds and its contraction term vanishes on fully skew input") {
  Rng rng(17);
  for (int n : {2, 4}) {
    for (int p : {n, n - 1}) {
      GammaRep rep = build_gamma_rep(Signature(p, n - p), +1);
      for (int t = 0; t < 25; ++t) {
        IndexedTensor w = random_admissible(n, rng);
        Form4Result res = contract_form4(rep, w);
        CHECK(res.residual < 1e-10);
      }
      // fully skew: lhs equals the skew term alone
      IndexedTensor w = random_admissible(n, rng);
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) all[std::size_t(i)] = i;
      IndexedTensor skew = antisymmetrize(w, all);
      Form4Result res = contract_form4(rep, skew);
      CHECK(res.residual < 1e-10);
      // the g-contraction of a fully skew tensor vanishes entry-wise
      double contraction = 0;
      for (int a = 0; a < n; ++a) {
        std::vector<int> idx(std::size_t(n), 0);
        idx[0] = idx[1] = a;
        contraction += std::abs(skew.at(idx));
      }
      CHECK(contraction < 1e-13);
    }
  }
}

TEST_CASE("zero tensor gives zero residuals") {
  GammaRep rep = build_gamma_rep(Signature(2, 0), +1);
  IndexedTensor w(2, 2);
  CHECK(verify_form1(w) == 0.0);
  CHECK(verify_form2(rep, w) == 0.0);
  CHECK(contract_form4(rep, w).residual == 0.0);
}
