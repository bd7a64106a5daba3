#include "webgeom/linalg.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace webgeom {
namespace {

Poly lcm(const Poly& a, const Poly& b) {
  Poly g = gcd(a, b);
  return *divide_exact(a, g) * b;
}

// Each row multiplied by the lcm of its denominators. Returns the product of those lcms.
Poly clear_rows(const Matrix<RatFunc>& m, Matrix<Poly>& out) {
  out = Matrix<Poly>(m.rows(), m.cols());
  Poly scale(1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Poly l(1);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).den().is_constant()) l = lcm(l, m(i, j).den());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const RatFunc& e = m(i, j);
      if (e.is_zero()) continue;
      out(i, j) = e.num() * *divide_exact(l, e.den());
    }
    scale *= l;
  }
  return scale;
}

std::size_t pivot_row(const Matrix<Poly>& a, std::size_t from, std::size_t c) {
  std::size_t best = a.rows();
  for (std::size_t i = from; i < a.rows(); ++i) {
    if (a(i, c).is_zero()) continue;
    if (best == a.rows() || a(i, c).terms().size() < a(best, c).terms().size()) best = i;
  }
  return best;
}

// Bareiss elimination in place; returns the rank and the sign of the row permutation.
std::size_t bareiss(Matrix<Poly>& a, int& sign) {
  sign = 1;
  Poly prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = pivot_row(a, r, c);
    if (p == a.rows()) continue;
    if (p != r) {
      a.swap_rows(p, r);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j) {
        Poly v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        // Sylvester's identity: every updated entry is a minor, so the division is exact.
        auto q = divide_exact(v, prev);
        if (!q) throw NotDivisible("fraction-free elimination: inexact division");
        a(i, j) = std::move(*q);
      }
      a(i, c) = Poly();
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

}  // namespace

std::size_t fraction_free_rank(const Matrix<RatFunc>& m) {
  Matrix<Poly> a;
  clear_rows(m, a);
  int sign = 1;
  return bareiss(a, sign);
}

RatFunc fraction_free_determinant(const Matrix<RatFunc>& m) {
  if (m.rows() != m.cols()) throw NonSquare("determinant of a non-square matrix");
  if (m.rows() == 0) return RatFunc(1);
  Matrix<Poly> a;
  Poly scale = clear_rows(m, a);
  int sign = 1;
  if (bareiss(a, sign) < m.rows()) return RatFunc(0);
  Poly det = a(m.rows() - 1, m.cols() - 1);
  if (sign < 0) det = -det;
  return RatFunc(det, scale);
}

std::size_t numeric_rank(Matrix<BigFloat> m, const BigFloat& tol) {
  using boost::multiprecision::abs;
  std::vector<BigFloat> row_max(m.rows(), BigFloat(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BigFloat a = abs(m(i, j));
      if (a > row_max[i]) row_max[i] = a;
    }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // Partial pivoting on the scaled magnitude |a_ic| / row_max_i.
    std::size_t best = m.rows();
    BigFloat best_scaled = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (row_max[i] == 0) continue;
      BigFloat a = abs(m(i, c));
      if (a <= tol * row_max[i]) continue;
      BigFloat s = a / row_max[i];
      if (best == m.rows() || s > best_scaled) {
        best = i;
        best_scaled = s;
      }
    }
    if (best == m.rows()) continue;
    m.swap_rows(r, best);
    std::swap(row_max[r], row_max[best]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      BigFloat f = m(i, c) / m(r, c);
      m(i, c) = 0;
      for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace webgeom
