#pragma once

#include <vector>

#include <gmpxx.h>

#include "webgeom/matrix.hpp"
#include "webgeom/multi_index.hpp"

namespace webgeom {

// Basis index (A, K) of S^h (x) Lambda^p in q variables, ordered by A then K.
struct SymbolIndex {
  Subset a;
  MultiIndex k;
};
std::vector<SymbolIndex> symbol_basis(int q, int p, unsigned h);

// Matrix of d_p: S^h (x) Lambda^p -> S^{h-1} (x) Lambda^{p+1} in q variables, on monomial
// bases ordered as symbol_basis. d(x^K (x) dx_A) = sum_{l not in A} K_l x^{K-1_l} dx_l ^ dx_A,
// with dx_l moved into ascending position at sign (-1)^{#{a in A : a < l}}.
// For h = 0 the target is zero: the result has no rows.
Matrix<mpq_class> koszul_matrix(int q, int p, unsigned h);

// Integer basis of ker d_p in monomial coordinates, echelon order. For h = 0 or p = q this
// is the standard basis.
std::vector<std::vector<mpq_class>> closed_symbol_basis(int q, int p, unsigned h);

// Same basis converted to derivative coordinates: component (A, K) multiplied by K!.
// Returned as a (b(q,p) c(q,h)) x z(q,p,h) matrix.
Matrix<mpq_class> closed_jet_basis(int q, int p, unsigned h);

}  // namespace webgeom
