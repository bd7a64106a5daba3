#include <doctest.h>

#include "webgeom/combinat.hpp"
#include "webgeom/koszul.hpp"
#include "webgeom/linalg.hpp"
#include "webgeom/multi_index.hpp"

using namespace webgeom;
using combinat::binom;
using combinat::c;
using combinat::z;

TEST_CASE("multi-indices and subsets") {
  auto hs = homogeneous(2, 2);
  REQUIRE(hs.size() == 3);
  CHECK(hs[0] == MultiIndex{2, 0});
  CHECK(hs[1] == MultiIndex{1, 1});
  CHECK(hs[2] == MultiIndex{0, 2});
  for (std::size_t r = 1; r <= 4; ++r)
    for (unsigned h = 0; h <= 4; ++h) {
      auto all = homogeneous(r, h);
      CHECK(static_cast<combinat::Int>(all.size()) == c(static_cast<combinat::Int>(r), h));
      for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK(all[i] > all[i + 1]);
      for (const auto& l : all) CHECK(degree(l) == h);
    }
  auto ss = subsets(3, 2);
  REQUIRE(ss.size() == 3);
  CHECK(ss[0] == Subset{0, 1});
  CHECK(ss[1] == Subset{0, 2});
  CHECK(ss[2] == Subset{1, 2});
  CHECK(subset_rank(ss, Subset{0, 2}) == 1);
  CHECK(subset_rank(ss, Subset{2}) == -1);
  CHECK(subset_string(Subset{0, 2}) == "1,3");
  CHECK(factorial(MultiIndex{3, 2}) == 12);
  CHECK(first_nonzero(MultiIndex{0, 2, 1}) == 1);
  CHECK(first_nonzero(MultiIndex{0, 0}) == 2);
  CHECK(plus_unit(MultiIndex{1, 0}, 1) == MultiIndex{1, 1});
  CHECK(minus_unit(MultiIndex{1, 1}, 0) == MultiIndex{0, 1});
}

TEST_CASE("explicit differential on 1-forms in two variables") {
  // Columns: x dx, y dx, x dy, y dy. d(y dx) = -dx^dy, d(x dy) = dx^dy.
  Matrix<mpq_class> d = koszul_matrix(2, 1, 1);
  REQUIRE(d.rows() == 1);
  REQUIRE(d.cols() == 4);
  CHECK(d(0, 0) == 0);
  CHECK(d(0, 1) == -1);
  CHECK(d(0, 2) == 1);
  CHECK(d(0, 3) == 0);
  // Coefficient l_lambda: d(x^2 dy) = 2x dx^dy.
  Matrix<mpq_class> d2 = koszul_matrix(2, 1, 2);
  auto basis = symbol_basis(2, 1, 2);
  for (std::size_t col = 0; col < basis.size(); ++col)
    if (basis[col].a == Subset{1} && basis[col].k == MultiIndex{2, 0}) {
      CHECK(d2(0, col) == 2);
    }
}

TEST_CASE("Koszul complex: d o d = 0, kernel dimension, acyclicity") {
  for (int q = 1; q <= 4; ++q)
    for (int p = 0; p <= q; ++p)
      for (unsigned h = 0; h <= 5; ++h) {
        Matrix<mpq_class> dp = koszul_matrix(q, p, h);
        if (h >= 1 && p + 1 <= q) {
          Matrix<mpq_class> next = koszul_matrix(q, p + 1, h - 1);
          if (next.rows() > 0) {
            Matrix<mpq_class> dd = next * dp;
            for (std::size_t i = 0; i < dd.rows(); ++i)
              for (std::size_t j = 0; j < dd.cols(); ++j) CHECK(sgn(dd(i, j)) == 0);
          }
        }
        if (p == 0) continue;
        std::size_t ker = dp.cols() - exact_rank(dp);
        CHECK(static_cast<combinat::Int>(ker) == z(q, p, h));
        if (h > 4) continue;
        // im d_{p-1} sits inside ker d_p and has the same dimension.
        Matrix<mpq_class> prev = koszul_matrix(q, p - 1, h + 1);
        CHECK(exact_rank(prev) == ker);
        if (dp.rows() > 0) {
          Matrix<mpq_class> comp = dp * prev;
          for (std::size_t i = 0; i < comp.rows(); ++i)
            for (std::size_t j = 0; j < comp.cols(); ++j) CHECK(sgn(comp(i, j)) == 0);
        }
      }
}

TEST_CASE("closed symbol bases") {
  CHECK(closed_symbol_basis(2, 2, 1).size() == 2);
  for (int q = 1; q <= 4; ++q)
    for (int p = 1; p <= q; ++p) {
      auto b0 = closed_symbol_basis(q, p, 0);
      CHECK(static_cast<combinat::Int>(b0.size()) == binom(q, p));
      for (std::size_t j = 0; j < b0.size(); ++j)
        for (std::size_t r = 0; r < b0[j].size(); ++r) CHECK(b0[j][r] == (r == j ? 1 : 0));
    }
  // p = q: every symbol is closed.
  for (int q = 1; q <= 4; ++q)
    for (unsigned h = 0; h <= 4; ++h) CHECK(static_cast<combinat::Int>(closed_symbol_basis(q, q, h).size()) == c(q, h));
  // Integer vectors, and the jet form is the symbol form scaled by K!.
  for (int q = 2; q <= 3; ++q)
    for (unsigned h = 0; h <= 3; ++h) {
      auto idx = symbol_basis(q, 1, h);
      auto basis = closed_symbol_basis(q, 1, h);
      Matrix<mpq_class> jet = closed_jet_basis(q, 1, h);
      CHECK(jet.cols() == basis.size());
      for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t r = 0; r < idx.size(); ++r) {
          CHECK(basis[j][r].get_den() == 1);
          CHECK(jet(r, j) == basis[j][r] * mpq_class(factorial(idx[r].k)));
        }
    }
}
