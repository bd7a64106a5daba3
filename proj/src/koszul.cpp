#include "webgeom/koszul.hpp"

#include <algorithm>
#include <map>

#include "webgeom/linalg.hpp"

namespace webgeom {

std::vector<SymbolIndex> symbol_basis(int q, int p, unsigned h) {
  std::vector<SymbolIndex> out;
  auto ks = homogeneous(static_cast<std::size_t>(q), h);
  for (const Subset& a : subsets(q, p))
    for (const MultiIndex& k : ks) out.push_back({a, k});
  return out;
}

Matrix<mpq_class> koszul_matrix(int q, int p, unsigned h) {
  auto cols = symbol_basis(q, p, h);
  if (h == 0 || p >= q) return Matrix<mpq_class>(0, cols.size());
  auto rows = symbol_basis(q, p + 1, h - 1);
  std::map<std::pair<Subset, MultiIndex>, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of[{rows[r].a, rows[r].k}] = r;
  Matrix<mpq_class> m(rows.size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& [a, k] = cols[c];
    for (int l = 0; l < q; ++l) {
      if (k[l] == 0 || std::find(a.begin(), a.end(), l) != a.end()) continue;
      Subset b = a;
      b.insert(std::upper_bound(b.begin(), b.end(), l), l);
      long below = std::count_if(a.begin(), a.end(), [l](int x) { return x < l; });
      mpq_class coef = (below % 2 ? -1 : 1) * static_cast<long>(k[l]);
      m(row_of.at({b, minus_unit(k, l)}), c) += coef;
    }
  }
  return m;
}

std::vector<std::vector<mpq_class>> closed_symbol_basis(int q, int p, unsigned h) {
  auto basis = exact_kernel(koszul_matrix(q, p, h));
  for (auto& v : basis) {
    mpz_class l = 1;
    for (const mpq_class& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    for (mpq_class& x : v) x *= l;
  }
  return basis;
}

Matrix<mpq_class> closed_jet_basis(int q, int p, unsigned h) {
  auto idx = symbol_basis(q, p, h);
  auto basis = closed_symbol_basis(q, p, h);
  Matrix<mpq_class> m(idx.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t r = 0; r < idx.size(); ++r) m(r, j) = basis[j][r] * mpq_class(factorial(idx[r].k));
  return m;
}

}  // namespace webgeom
