#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "webgeom/bigfloat.hpp"
#include "webgeom/errors.hpp"
#include "webgeom/matrix.hpp"
#include "webgeom/ratfunc.hpp"

namespace webgeom {

// Pivot heuristics for exact fields: smaller weight means cheaper elimination.
inline bool field_is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline std::size_t field_weight(const mpq_class& x) {
  return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}
inline bool field_is_zero(const RatFunc& x) { return x.is_zero(); }
inline std::size_t field_weight(const RatFunc& x) { return x.num().terms().size() + x.den().terms().size(); }

template <class T>
struct Echelon {
  Matrix<T> rref;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

// Reduced row echelon form over an exact field (mpq_class or RatFunc).
template <class T>
Echelon<T> reduced_echelon(Matrix<T> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    std::size_t best_w = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (field_is_zero(m(i, c))) continue;
      std::size_t w = field_weight(m(i, c));
      if (best == m.rows() || w < best_w) {
        best = i;
        best_w = w;
      }
    }
    if (best == m.rows()) continue;
    m.swap_rows(r, best);
    T inv = T(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (!field_is_zero(m(r, j))) m(r, j) = m(r, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || field_is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!field_is_zero(m(r, j))) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <class T>
std::size_t exact_rank(const Matrix<T>& m) {
  return reduced_echelon(m).pivots.size();
}

// Echelon kernel basis: one vector per free column f, with a 1 in position f.
template <class T>
std::vector<std::vector<T>> exact_kernel(const Matrix<T>& m) {
  Echelon<T> e = reduced_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rref(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// A solution with free variables set to 0. Throws Inconsistent.
template <class T>
std::vector<T> exact_solve(const Matrix<T>& m, const std::vector<T>& rhs) {
  if (rhs.size() != m.rows()) throw InvalidArgument("solve: right-hand side length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  Echelon<T> e = reduced_echelon(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) throw Inconsistent("linear system is inconsistent");
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rref(r, m.cols());
  return x;
}

// Solve with several right-hand sides at once (columns of rhs). Throws Inconsistent.
template <class T>
Matrix<T> exact_solve_many(const Matrix<T>& m, const Matrix<T>& rhs) {
  if (rhs.rows() != m.rows()) throw InvalidArgument("solve: right-hand side row mismatch");
  Echelon<T> e = reduced_echelon(m.joined(rhs));
  for (std::size_t c : e.pivots)
    if (c >= m.cols()) throw Inconsistent("linear system is inconsistent");
  Matrix<T> x(m.cols(), rhs.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t k = 0; k < rhs.cols(); ++k) x(e.pivots[r], k) = e.rref(r, m.cols() + k);
  return x;
}

template <class T>
T exact_determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw NonSquare("determinant of a non-square matrix");
  T det(1);
  for (std::size_t c = 0; c < m.cols(); ++c) {
    std::size_t p = c;
    while (p < m.rows() && field_is_zero(m(p, c))) ++p;
    if (p == m.rows()) return T(0);
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det = det * m(c, c);
    T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < m.rows(); ++i) {
      if (field_is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

// Fraction-free (Bareiss) elimination on rows cleared of denominators.
std::size_t fraction_free_rank(const Matrix<RatFunc>& m);
RatFunc fraction_free_determinant(const Matrix<RatFunc>& m);

// Rank with relative pivot threshold: a pivot candidate in row i counts as nonzero when
// |a_ij| > tol * max_j |a_ij| of the original row i. Serial reference implementation.
std::size_t numeric_rank(Matrix<BigFloat> m, const BigFloat& tol);

}  // namespace webgeom
