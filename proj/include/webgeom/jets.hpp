#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "webgeom/expr.hpp"
#include "webgeom/matrix.hpp"
#include "webgeom/multi_index.hpp"
#include "webgeom/ratfunc.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

inline bool value_is_zero(const Expr& e) { return e.is_zero(); }
inline bool value_is_zero(const RatFunc& e) { return e.is_zero(); }

// Coefficients M_L^K(F, J) of the expansion ((f o u) J)'_L = sum_K M_L^K (f'_K o u).
// L runs over n variables, K over q slot variables; entries with |K| > |L| are zero.
template <class T>
class CoeffTable {
 public:
  explicit CoeffTable(unsigned max_order = 0) : max_order_(max_order) {}
  unsigned max_order() const { return max_order_; }
  // Zero for absent entries.
  const T& at(const MultiIndex& l, const MultiIndex& k) const;
  void set(const MultiIndex& l, const MultiIndex& k, T v) { entries_[{l, k}] = std::move(v); }
  const std::map<std::pair<MultiIndex, MultiIndex>, T>& entries() const { return entries_; }

 private:
  unsigned max_order_;
  std::map<std::pair<MultiIndex, MultiIndex>, T> entries_;
};

// Fills orders 0..max_order; each L is reached from L - 1_l with l its first nonzero position:
//   M_L^K = d_l M_{L'}^K + sum_a M_{L'}^{K-1_a} (u_a)'_l.
template <class T>
CoeffTable<T> m_coeffs(const std::vector<T>& u, const T& j, const std::vector<VarId>& vars, unsigned max_order);

// Closed form of N_L^K = M_L^K(F, 1) for |K| = |L|: sum over q x n contingency tables m with row
// sums K and column sums L of (prod_l L_l! / prod m_al!) prod (u_a)'_l^{m_al}.
Expr n_coeffs_topdegree(const std::vector<Expr>& u, const std::vector<VarId>& vars, const MultiIndex& l,
                        const MultiIndex& k);

// Row (B, L) of the jet system.
struct RowKey {
  Subset b;
  MultiIndex l;
};
// Plain column (i, A, K).
struct ColKey {
  int i;
  Subset a;
  MultiIndex k;
};

// Full jet system M_k(p) (plain) or its closed counterpart, with block views. Rows are grouped by
// order, then ordered by B then L. Plain columns are grouped by order, then by (A, K), then i.
// Closed columns are grouped by order h, then by Koszul basis vector, then i.
template <class T>
struct JetSystem {
  int n = 0, q = 0, d = 0, p = 0;
  unsigned k = 0;
  bool closed = false;
  std::vector<RowKey> rows;
  std::vector<std::size_t> row_start;  // size k+2
  std::vector<ColKey> plain_cols;
  std::vector<std::size_t> plain_col_start;
  std::vector<std::size_t> col_start;  // columns of m
  // Closed: per order h, the (b(q,p) c(q,h)) x z(q,p,h) basis in derivative coordinates.
  std::vector<Matrix<mpq_class>> basis;
  Matrix<T> m;

  std::size_t cols_up_to(unsigned order) const { return col_start[order + 1]; }
  std::size_t rows_up_to(unsigned order) const { return row_start[order + 1]; }
  Matrix<T> block(unsigned ell, unsigned h) const;
  Matrix<T> P(unsigned order) const { return block(order, order); }
  // Rows of the given order against all lower-order columns.
  Matrix<T> Q(unsigned order) const;
  Matrix<T> M(unsigned order) const;
  // Column labels "i,A,K" (plain) or "i,h,j" (closed); row labels "B,L".
  std::vector<std::string> row_labels(unsigned order) const;
  std::vector<std::string> col_labels(unsigned order) const;

  // Derivative coordinates (plain columns up to order) of a coordinate vector on the columns of m
  // up to order.
  std::vector<T> to_jet(const std::vector<T>& coords, unsigned order) const;
  // Position of plain column (i, r, h): r indexes symbol_basis(q, p, h).
  std::size_t plain_index(int i, std::size_t r, unsigned h) const {
    return plain_col_start[h] + r * static_cast<std::size_t>(d) + static_cast<std::size_t>(i);
  }
};

// gens: d foliations of q generators; vars: the n ambient variables.
template <class T>
JetSystem<T> build_jets(const std::vector<std::vector<T>>& gens, const std::vector<VarId>& vars, int p, unsigned k,
                        bool closed);

JetSystem<Expr> build_plain(const Web& web, int p, unsigned k);
JetSystem<Expr> build_closed(const Web& web, int p, unsigned k);
// Rational webs only; throws TranscendentalUnsupported otherwise.
JetSystem<RatFunc> build_rational(const Web& web, int p, unsigned k, bool closed);

// Chain-rule prolongation for foliation i: the (b(q,p)c(q,h)) x (b(q,p)c(q,h+1)) matrix whose
// entry ((A,K), (A,K+1_a)) is (u_{i,a})'_l, so that d_l (f'_K o u) = row (A,K) applied to the
// order-(h+1) derivative coordinates.
Matrix<Expr> prolongation(const Web& web, int i, int p, unsigned h, std::size_t lambda);

// Predicted l-derivatives of every plain coordinate of order <= order-1 from a plain derivative
// vector covering orders <= order. du[i][a][l] = (u_{i,a})'_l.
template <class T>
std::vector<T> prolong(const JetSystem<T>& sys, const std::vector<std::vector<std::vector<T>>>& du,
                       const std::vector<T>& jet, unsigned order, std::size_t lambda);

// JSON debug dump: block label "P_h^(l)" -> dense entry strings.
std::string dump_blocks(const JetSystem<Expr>& sys);

}  // namespace webgeom
