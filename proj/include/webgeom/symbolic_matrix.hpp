#pragma once

#include <optional>
#include <string>
#include <vector>

#include "webgeom/expr.hpp"
#include "webgeom/linalg.hpp"
#include "webgeom/matrix.hpp"

namespace webgeom {

// Expression matrix with row and column labels.
struct SymbolicMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Matrix<Expr> entries;

  std::size_t rows() const { return entries.rows(); }
  std::size_t cols() const { return entries.cols(); }
};

enum class Backend { Exact, BigFloat };

struct AtPoint {
  AtPoint() = default;
  explicit AtPoint(Point p) : point(std::move(p)) {}

  Point point;
  Backend backend = Backend::BigFloat;
  unsigned digits = kDefaultDigits;
  // Relative pivot threshold for the BigFloat backend; 1e-20 when unset.
  std::optional<double> tolerance;
};

// Throws ExactUnsupported when an entry is transcendental.
Matrix<RatFunc> to_ratfunc(const Matrix<Expr>& m);
Matrix<mpq_class> eval_exact(const Matrix<Expr>& m, const Point& pt);
// At the current BigFloat default precision.
Matrix<BigFloat> eval_float(const Matrix<Expr>& m, const Point& pt);

std::size_t rank_symbolic(const Matrix<Expr>& m);
std::size_t rank_at(const Matrix<Expr>& m, const AtPoint& at);

// Right kernel over the rational-function field, each vector cleared of denominators.
std::vector<std::vector<RatFunc>> kernel_symbolic(const Matrix<Expr>& m);
std::vector<std::vector<mpq_class>> kernel_at(const Matrix<Expr>& m, const Point& pt);

// Throws Inconsistent. When m is square, a rank drop throws Singular.
std::vector<RatFunc> solve_symbolic(const Matrix<Expr>& m, const std::vector<Expr>& rhs);

// Fraction-free for rational entries, cofactor expansion otherwise. Throws NonSquare.
Expr determinant(const Matrix<Expr>& m);

// Multiply a rational-function vector by the lcm of its denominators.
std::vector<RatFunc> clear_denominators(const std::vector<RatFunc>& v);

}  // namespace webgeom
