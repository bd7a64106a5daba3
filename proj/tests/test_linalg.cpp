#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "webgeom/errors.hpp"
#include "webgeom/linalg.hpp"
#include "webgeom/sampling.hpp"
#include "webgeom/symbolic_matrix.hpp"

using namespace webgeom;
using namespace webgeom::testing;

namespace {

Matrix<mpq_class> random_q(std::mt19937_64& rng, std::size_t r, std::size_t c, int range = 4) {
  std::uniform_int_distribution<int> dist(-range, range);
  Matrix<mpq_class> m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = mpq_class(dist(rng), 1 + std::abs(dist(rng)));
      m(i, j).canonicalize();
    }
  return m;
}

// Laplace expansion along the first row.
mpq_class cofactor_det(const Matrix<mpq_class>& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  mpq_class total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix<mpq_class> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    mpq_class term = m(0, j) * cofactor_det(minor);
    total += (j % 2 ? -term : term);
  }
  return total;
}

Matrix<Expr> expr_matrix(const std::vector<std::vector<std::string>>& rows) {
  Matrix<Expr> m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = parse_expression(rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("exact rank, kernel and rank-nullity") {
  CHECK(exact_rank(Matrix<mpq_class>::identity(3)) == 3);
  CHECK(exact_kernel(Matrix<mpq_class>::identity(3)).empty());
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    // Rank at most 3 by construction: a 4x3 times 3x6 product, sometimes with a repeated row.
    Matrix<mpq_class> m = random_q(rng, 4, 3) * random_q(rng, 3, 6);
    if (t % 3 == 0)
      for (std::size_t j = 0; j < 6; ++j) m(3, j) = m(0, j);
    auto ker = exact_kernel(m);
    CHECK(ker.size() == 6 - exact_rank(m));
    for (const auto& k : ker)
      for (const auto& e : m * k) CHECK(sgn(e) == 0);
  }
}

TEST_CASE("exact solve") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    Matrix<mpq_class> m = random_q(rng, 5, 5);
    if (exact_rank(m) < 5) continue;
    std::vector<mpq_class> b = random_q(rng, 5, 1).column(0);
    auto x = exact_solve(m, b);
    CHECK(m * x == b);
  }
  Matrix<mpq_class> id = Matrix<mpq_class>::identity(3);
  std::vector<mpq_class> v{1, mpq_class(2, 3), -4};
  CHECK(exact_solve(id, v) == v);
  Matrix<mpq_class> singular(2, 2);
  singular(0, 0) = 1;
  singular(1, 0) = 1;
  CHECK_THROWS_AS(exact_solve(singular, std::vector<mpq_class>{1, 2}), Inconsistent);
}

TEST_CASE("determinants: elimination, Bareiss and cofactor oracle") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Matrix<mpq_class> m = random_q(rng, 4, 4, 9);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) m(i, j) = mpz_class(m(i, j).get_num());  // integer entries
    CHECK(exact_determinant(m) == cofactor_det(m));
  }
  CHECK(exact_determinant(Matrix<mpq_class>::identity(4)) == 1);
  CHECK_THROWS_AS(exact_determinant(Matrix<mpq_class>(2, 3)), NonSquare);

  Matrix<RatFunc> r(3, 3);
  const char* cells[3][3] = {{"x", "1", "y"}, {"1/x", "y", "0"}, {"x+y", "2", "1/(x-y)"}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = rf(cells[i][j]);
  CHECK(fraction_free_determinant(r) == exact_determinant(r));
  CHECK(fraction_free_rank(r) == 3);
}

TEST_CASE("symbolic rank and kernel") {
  Matrix<Expr> m = expr_matrix({{"x", "x^2"}, {"1", "x"}});
  CHECK(rank_symbolic(m) == 1);
  auto ker = kernel_symbolic(m);
  REQUIRE(ker.size() == 1);
  CHECK(ker[0][0] == rf("-x"));
  CHECK(ker[0][1] == RatFunc(1));
  CHECK(rank_symbolic(expr_matrix({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}})) == 3);

  // Generic agreement: symbolic rank equals the exact point rank at 3 random points.
  auto v = vars_of({"x", "y"});
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    Matrix<Expr> a(3, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = random_poly(rng, v, 2);
    for (std::size_t j = 0; j < 4; ++j) a(2, j) = a(0, j) * random_poly(rng, v, 1) + a(1, j);
    std::size_t r = rank_symbolic(a);
    for (const Point& pt : sample_points(v, 3, static_cast<std::uint64_t>(t))) {
      AtPoint at(pt);
      at.backend = Backend::Exact;
      CHECK(rank_at(a, at) == r);
      CHECK(rank_at(a, AtPoint(pt)) == r);
    }
  }
}

TEST_CASE("symbolic solve and determinant") {
  Matrix<Expr> m = expr_matrix({{"x", "1"}, {"0", "y"}});
  auto x = solve_symbolic(m, {parse_expression("x+1"), parse_expression("y^2")});
  CHECK(x[0] == RatFunc(1) + rf("1/x") - rf("y/x"));
  CHECK(x[1] == rf("y"));
  CHECK_THROWS_AS(solve_symbolic(expr_matrix({{"x", "x"}, {"1", "1"}}), {Expr(1), Expr(1)}), Singular);
  CHECK(to_ratfunc(determinant(m)) == rf("x*y"));
  Matrix<Expr> t = expr_matrix({{"atan(x)", "1"}, {"x", "1"}});
  Expr d = determinant(t);
  CHECK_FALSE(d.is_rational());
  Point pt{{intern("x"), 1}};
  BigFloat val = eval_float(d, pt);
  CHECK(abs(val - (eval_float(parse_expression("atan(1)"), pt) - 1)) < BigFloat("1e-45"));
}

TEST_CASE("numeric rank with relative threshold") {
  PrecisionScope scope(50);
  Matrix<BigFloat> m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = BigFloat(1) / BigFloat(i + j + 1);
  CHECK(numeric_rank(m, BigFloat("1e-20")) == 3);
  // Third row = first + second up to a 1e-30 perturbation: below the threshold.
  for (std::size_t j = 0; j < 3; ++j) m(2, j) = m(0, j) + m(1, j) + (j == 0 ? BigFloat("1e-30") : BigFloat(0));
  CHECK(numeric_rank(m, BigFloat("1e-20")) == 2);
  CHECK(numeric_rank(m, BigFloat("1e-40")) == 3);
  // Row scaling does not change the rank.
  for (std::size_t j = 0; j < 3; ++j) m(1, j) *= BigFloat("1e25");
  CHECK(numeric_rank(m, BigFloat("1e-20")) == 2);
  CHECK(numeric_rank(Matrix<BigFloat>(2, 2), BigFloat("1e-20")) == 0);
}
