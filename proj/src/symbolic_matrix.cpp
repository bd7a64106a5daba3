#include "webgeom/symbolic_matrix.hpp"

#include <cmath>
#include <unordered_map>

#include "webgeom/errors.hpp"

namespace webgeom {

Matrix<RatFunc> to_ratfunc(const Matrix<Expr>& m) {
  RatFuncConverter conv;
  Matrix<RatFunc> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = conv(m(i, j));
  return out;
}

Matrix<mpq_class> eval_exact(const Matrix<Expr>& m, const Point& pt) {
  ExactEvaluator ev(pt);
  Matrix<mpq_class> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ev(m(i, j));
  return out;
}

Matrix<BigFloat> eval_float(const Matrix<Expr>& m, const Point& pt) {
  FloatEvaluator ev(pt);
  Matrix<BigFloat> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = ev(m(i, j));
  return out;
}

std::size_t rank_symbolic(const Matrix<Expr>& m) { return fraction_free_rank(to_ratfunc(m)); }

std::size_t rank_at(const Matrix<Expr>& m, const AtPoint& at) {
  if (at.backend == Backend::Exact) return exact_rank(eval_exact(m, at.point));
  PrecisionScope scope(at.digits);
  BigFloat tol(at.tolerance.value_or(1e-20));
  return numeric_rank(eval_float(m, at.point), tol);
}

std::vector<RatFunc> clear_denominators(const std::vector<RatFunc>& v) {
  Poly l(1);
  for (const RatFunc& e : v) {
    if (e.den().is_constant()) continue;
    Poly g = gcd(l, e.den());
    l = *divide_exact(l, g) * e.den();
  }
  std::vector<RatFunc> out;
  out.reserve(v.size());
  for (const RatFunc& e : v) out.push_back(e * RatFunc(l));
  return out;
}

std::vector<std::vector<RatFunc>> kernel_symbolic(const Matrix<Expr>& m) {
  auto basis = exact_kernel(to_ratfunc(m));
  for (auto& v : basis) v = clear_denominators(v);
  return basis;
}

std::vector<std::vector<mpq_class>> kernel_at(const Matrix<Expr>& m, const Point& pt) {
  return exact_kernel(eval_exact(m, pt));
}

std::vector<RatFunc> solve_symbolic(const Matrix<Expr>& m, const std::vector<Expr>& rhs) {
  Matrix<RatFunc> a = to_ratfunc(m);
  if (a.rows() == a.cols() && exact_rank(a) < a.rows()) throw Singular("square system is singular");
  RatFuncConverter conv;
  std::vector<RatFunc> b;
  b.reserve(rhs.size());
  for (const Expr& e : rhs) b.push_back(conv(e));
  return exact_solve(a, b);
}

namespace {

// Laplace expansion along successive rows; minors keyed by the bitmask of used columns.
Expr cofactor_determinant(const Matrix<Expr>& m) {
  const std::size_t n = m.rows();
  if (n > 20) throw InvalidArgument("cofactor determinant limited to 20x20");
  std::unordered_map<std::uint32_t, Expr> memo;
  auto rec = [&](auto&& self, std::size_t row, std::uint32_t used) -> Expr {
    if (row == n) return Expr(1);
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    std::vector<Expr> terms;
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (used & (1u << j)) continue;
      if (!m(row, j).is_zero()) {
        Expr minor = self(self, row + 1, used | (1u << j));
        if (!minor.is_zero()) terms.push_back(sign > 0 ? m(row, j) * minor : -(m(row, j) * minor));
      }
      sign = -sign;
    }
    Expr out = add(std::move(terms));
    memo.emplace(used, out);
    return out;
  };
  return rec(rec, 0, 0);
}

}  // namespace

Expr determinant(const Matrix<Expr>& m) {
  if (m.rows() != m.cols()) throw NonSquare("determinant of a non-square matrix");
  bool rational = true;
  for (std::size_t i = 0; i < m.rows() && rational; ++i)
    for (std::size_t j = 0; j < m.cols() && rational; ++j) rational = m(i, j).is_rational();
  if (rational) return to_expr(fraction_free_determinant(to_ratfunc(m)));
  return cofactor_determinant(m);
}

}  // namespace webgeom
