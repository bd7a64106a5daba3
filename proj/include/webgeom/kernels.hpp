#pragma once

#include <string>
#include <vector>

#include "webgeom/bigfloat.hpp"
#include "webgeom/expr.hpp"
#include "webgeom/matrix.hpp"
#include "webgeom/symbolic_matrix.hpp"

// Point-evaluation kernels. Each has a serial reference implementation and an OpenMP variant
// that must return identical results; the benchmark target compares the two.
namespace webgeom::kernels {

// Entry-wise evaluation at the current BigFloat default precision.
Matrix<BigFloat> evaluate_serial(const Matrix<Expr>& m, const Point& pt);
// Rows split across threads, one memoizing evaluator per thread.
Matrix<BigFloat> evaluate_parallel(const Matrix<Expr>& m, const Point& pt);

// Same pivoting rule as webgeom::numeric_rank; the elimination of rows below the pivot is
// split across threads.
std::size_t numeric_rank_parallel(Matrix<BigFloat> m, const BigFloat& tol);

struct PointRank {
  bool ok = false;
  std::size_t rank = 0;
  std::string error;  // evaluation failure when !ok
};

struct RankOptions {
  Backend backend = Backend::BigFloat;
  unsigned digits = kDefaultDigits;
  double tolerance = 1e-20;
};

// Rank of m at each point; evaluation errors are reported per point, not thrown.
std::vector<PointRank> ranks_serial(const Matrix<Expr>& m, const std::vector<Point>& points, const RankOptions& opt);
// Points processed concurrently.
std::vector<PointRank> ranks_parallel(const Matrix<Expr>& m, const std::vector<Point>& points,
                                      const RankOptions& opt);

int max_threads();

}  // namespace webgeom::kernels
