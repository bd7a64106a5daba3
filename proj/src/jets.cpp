#include "webgeom/jets.hpp"

#include <functional>

#include <json.hpp>

#include "webgeom/combinat.hpp"
#include "webgeom/errors.hpp"
#include "webgeom/koszul.hpp"

namespace webgeom {
namespace {

template <class T>
struct Deriver;

template <>
struct Deriver<Expr> {
  explicit Deriver(const std::vector<VarId>& vars) {
    for (VarId v : vars) d.emplace_back(v);
  }
  Expr operator()(const Expr& e, std::size_t j) { return d[j](e); }
  std::vector<Differentiator> d;
};

template <>
struct Deriver<RatFunc> {
  explicit Deriver(const std::vector<VarId>& vars) : vars(vars) {}
  RatFunc operator()(const RatFunc& e, std::size_t j) { return e.derivative(vars[j]); }
  std::vector<VarId> vars;
};

template <class T>
const T& zero_value() {
  static const T z(0);
  return z;
}

// Leibniz expansion; p is at most q, which stays small.
template <class T>
T small_determinant(const std::vector<std::vector<T>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  T total(0);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    T prod(1);
    bool zero = false;
    for (std::size_t r = 0; r < n && !zero; ++r) {
      if (value_is_zero(m[r][perm[r]])) zero = true;
      else prod = prod * m[r][perm[r]];
    }
    if (zero) continue;
    total = (inversions % 2) ? total - prod : total + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::size_t index_of(const std::vector<MultiIndex>& all, const MultiIndex& l) {
  return static_cast<std::size_t>(std::find(all.begin(), all.end(), l) - all.begin());
}

}  // namespace

template <class T>
const T& CoeffTable<T>::at(const MultiIndex& l, const MultiIndex& k) const {
  auto it = entries_.find({l, k});
  return it == entries_.end() ? zero_value<T>() : it->second;
}

template <class T>
CoeffTable<T> m_coeffs(const std::vector<T>& u, const T& j, const std::vector<VarId>& vars, unsigned max_order) {
  const std::size_t n = vars.size();
  const std::size_t q = u.size();
  Deriver<T> deriv(vars);
  std::vector<std::vector<T>> du(q, std::vector<T>(n));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t l = 0; l < n; ++l) du[a][l] = deriv(u[a], l);

  CoeffTable<T> table(max_order);
  table.set(MultiIndex(n, 0), MultiIndex(q, 0), j);
  for (unsigned order = 1; order <= max_order; ++order) {
    for (const MultiIndex& l : homogeneous(n, order)) {
      std::size_t lam = first_nonzero(l);
      MultiIndex prev = minus_unit(l, lam);
      for (unsigned deg = 0; deg <= order; ++deg) {
        for (const MultiIndex& k : homogeneous(q, deg)) {
          T v(0);
          if (deg < order) {
            const T& below = table.at(prev, k);
            if (!value_is_zero(below)) v = deriv(below, lam);
          }
          for (std::size_t a = 0; a < q; ++a) {
            if (k[a] == 0 || value_is_zero(du[a][lam])) continue;
            const T& lower = table.at(prev, minus_unit(k, a));
            if (!value_is_zero(lower)) v = v + lower * du[a][lam];
          }
          if (!value_is_zero(v)) table.set(l, k, std::move(v));
        }
      }
    }
  }
  return table;
}

Expr n_coeffs_topdegree(const std::vector<Expr>& u, const std::vector<VarId>& vars, const MultiIndex& l,
                        const MultiIndex& k) {
  const std::size_t n = vars.size();
  const std::size_t q = u.size();
  if (degree(l) != degree(k)) throw InvalidArgument("n_coeffs_topdegree needs |K| = |L|");
  std::vector<std::vector<Expr>> du(q, std::vector<Expr>(n));
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < n; ++b) du[a][b] = differentiate(u[a], vars[b]);

  std::vector<Expr> terms;
  std::vector<std::vector<unsigned>> table(q, std::vector<unsigned>(n, 0));
  MultiIndex remaining = k;
  const mpz_class lfact = factorial(l);
  // Column lam distributes l[lam] among the rows with remaining capacity.
  std::function<void(std::size_t, std::size_t, unsigned)> fill = [&](std::size_t lam, std::size_t a, unsigned left) {
    if (lam == n) {
      mpz_class denom = 1;
      std::vector<Expr> factors;
      for (std::size_t x = 0; x < q; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          if (table[x][y] == 0) continue;
          mpz_class f;
          mpz_fac_ui(f.get_mpz_t(), table[x][y]);
          denom *= f;
          factors.push_back(pow(du[x][y], static_cast<int>(table[x][y])));
        }
      mpq_class weight(lfact, denom);
      weight.canonicalize();
      factors.push_back(Expr(weight));
      terms.push_back(mul(std::move(factors)));
      return;
    }
    if (a + 1 == q) {
      if (left > remaining[a]) return;
      table[a][lam] = left;
      remaining[a] -= left;
      fill(lam + 1, 0, lam + 1 < n ? l[lam + 1] : 0);
      remaining[a] += left;
      table[a][lam] = 0;
      return;
    }
    for (unsigned take = 0; take <= std::min(left, remaining[a]); ++take) {
      table[a][lam] = take;
      remaining[a] -= take;
      fill(lam, a + 1, left - take);
      remaining[a] += take;
      table[a][lam] = 0;
    }
  };
  if (n > 0 && q > 0) fill(0, 0, l[0]);
  return add(std::move(terms));
}

template <class T>
Matrix<T> JetSystem<T>::block(unsigned ell, unsigned h) const {
  Matrix<T> out(row_start[ell + 1] - row_start[ell], col_start[h + 1] - col_start[h]);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = m(row_start[ell] + r, col_start[h] + c);
  return out;
}

template <class T>
Matrix<T> JetSystem<T>::Q(unsigned order) const {
  Matrix<T> out(row_start[order + 1] - row_start[order], col_start[order]);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = m(row_start[order] + r, c);
  return out;
}

template <class T>
Matrix<T> JetSystem<T>::M(unsigned order) const {
  Matrix<T> out(row_start[order + 1], col_start[order + 1]);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

template <class T>
std::vector<std::string> JetSystem<T>::row_labels(unsigned order) const {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < row_start[order + 1]; ++r)
    out.push_back("B={" + subset_string(rows[r].b) + "} L=" + to_string(rows[r].l));
  return out;
}

template <class T>
std::vector<std::string> JetSystem<T>::col_labels(unsigned order) const {
  std::vector<std::string> out;
  if (!closed) {
    for (std::size_t c = 0; c < col_start[order + 1]; ++c)
      out.push_back("i=" + std::to_string(plain_cols[c].i + 1) + " A={" + subset_string(plain_cols[c].a) +
                    "} K=" + to_string(plain_cols[c].k));
    return out;
  }
  for (unsigned h = 0; h <= order; ++h) {
    std::size_t width = (col_start[h + 1] - col_start[h]) / static_cast<std::size_t>(d);
    for (std::size_t j = 0; j < width; ++j)
      for (int i = 0; i < d; ++i)
        out.push_back("i=" + std::to_string(i + 1) + " h=" + std::to_string(h) + " xi=" + std::to_string(j + 1));
  }
  return out;
}

template <class T>
std::vector<T> JetSystem<T>::to_jet(const std::vector<T>& coords, unsigned order) const {
  if (!closed) return std::vector<T>(coords.begin(), coords.begin() + static_cast<long>(plain_col_start[order + 1]));
  std::vector<T> jet(plain_col_start[order + 1], T(0));
  for (unsigned h = 0; h <= order; ++h) {
    const Matrix<mpq_class>& b = basis[h];
    for (int i = 0; i < d; ++i)
      for (std::size_t r = 0; r < b.rows(); ++r) {
        T v(0);
        for (std::size_t j = 0; j < b.cols(); ++j) {
          if (sgn(b(r, j)) == 0) continue;
          const T& c = coords[col_start[h] + j * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)];
          if (!value_is_zero(c)) v = v + T(b(r, j)) * c;
        }
        jet[plain_index(i, r, h)] = v;
      }
  }
  return jet;
}

template <class T>
JetSystem<T> build_jets(const std::vector<std::vector<T>>& gens, const std::vector<VarId>& vars, int p, unsigned k,
                        bool closed) {
  JetSystem<T> s;
  s.n = static_cast<int>(vars.size());
  s.d = static_cast<int>(gens.size());
  s.q = s.d ? static_cast<int>(gens[0].size()) : 0;
  s.p = p;
  s.k = k;
  s.closed = closed;
  if (p < 1 || p > s.q) throw InvalidArgument("jet system needs 1 <= p <= q");
  const auto bs = subsets(s.n, p);
  const auto as = subsets(s.q, p);

  std::vector<std::vector<MultiIndex>> ls(k + 1), ks(k + 1);
  s.row_start.push_back(0);
  for (unsigned ell = 0; ell <= k; ++ell) {
    ls[ell] = homogeneous(s.n, ell);
    ks[ell] = homogeneous(s.q, ell);
    for (const Subset& b : bs)
      for (const MultiIndex& l : ls[ell]) s.rows.push_back({b, l});
    s.row_start.push_back(s.rows.size());
  }
  s.plain_col_start.push_back(0);
  for (unsigned h = 0; h <= k; ++h) {
    for (const Subset& a : as)
      for (const MultiIndex& kk : ks[h])
        for (int i = 0; i < s.d; ++i) s.plain_cols.push_back({i, a, kk});
    s.plain_col_start.push_back(s.plain_cols.size());
  }

  Matrix<T> plain(s.rows.size(), s.plain_cols.size());
  Deriver<T> deriv(vars);
  for (int i = 0; i < s.d; ++i) {
    std::vector<std::vector<T>> jac(s.q, std::vector<T>(s.n));
    for (int a = 0; a < s.q; ++a)
      for (int b = 0; b < s.n; ++b) jac[a][b] = deriv(gens[i][a], b);
    for (std::size_t ai = 0; ai < as.size(); ++ai)
      for (std::size_t bi = 0; bi < bs.size(); ++bi) {
        std::vector<std::vector<T>> minor(p, std::vector<T>(p));
        for (int r = 0; r < p; ++r)
          for (int c = 0; c < p; ++c) minor[r][c] = jac[as[ai][r]][bs[bi][c]];
        T j = small_determinant(minor);
        if (value_is_zero(j)) continue;
        CoeffTable<T> table = m_coeffs(gens[i], j, vars, k);
        for (unsigned ell = 0; ell <= k; ++ell)
          for (std::size_t li = 0; li < ls[ell].size(); ++li) {
            std::size_t row = s.row_start[ell] + bi * ls[ell].size() + li;
            for (unsigned h = 0; h <= ell; ++h)
              for (std::size_t ki = 0; ki < ks[h].size(); ++ki)
                plain(row, s.plain_index(i, ai * ks[h].size() + ki, h)) = table.at(ls[ell][li], ks[h][ki]);
          }
      }
  }

  if (!closed) {
    s.col_start = s.plain_col_start;
    s.m = std::move(plain);
    return s;
  }
  s.col_start.push_back(0);
  for (unsigned h = 0; h <= k; ++h) {
    s.basis.push_back(closed_jet_basis(s.q, p, h));
    s.col_start.push_back(s.col_start.back() + s.basis[h].cols() * static_cast<std::size_t>(s.d));
  }
  s.m = Matrix<T>(s.rows.size(), s.col_start.back());
  for (unsigned h = 0; h <= k; ++h) {
    const Matrix<mpq_class>& b = s.basis[h];
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (int i = 0; i < s.d; ++i) {
        std::size_t col = s.col_start[h] + j * static_cast<std::size_t>(s.d) + static_cast<std::size_t>(i);
        for (std::size_t row = 0; row < s.rows.size(); ++row) {
          T v(0);
          for (std::size_t r = 0; r < b.rows(); ++r) {
            if (sgn(b(r, j)) == 0) continue;
            const T& e = plain(row, s.plain_index(i, r, h));
            if (!value_is_zero(e)) v = v + T(b(r, j)) * e;
          }
          s.m(row, col) = std::move(v);
        }
      }
  }
  return s;
}

namespace {

std::vector<std::vector<Expr>> web_generators(const Web& web) {
  std::vector<std::vector<Expr>> gens;
  for (const auto& f : web.foliations) gens.push_back(f.generators);
  return gens;
}

}  // namespace

JetSystem<Expr> build_plain(const Web& web, int p, unsigned k) { return build_jets(web_generators(web), web.vars, p, k, false); }

JetSystem<Expr> build_closed(const Web& web, int p, unsigned k) { return build_jets(web_generators(web), web.vars, p, k, true); }

JetSystem<RatFunc> build_rational(const Web& web, int p, unsigned k, bool closed) {
  if (!web.is_rational()) throw TranscendentalUnsupported("web " + web.name + " has transcendental generators");
  std::vector<std::vector<RatFunc>> gens;
  for (const auto& f : web.foliations) {
    std::vector<RatFunc> g;
    for (const auto& e : f.generators) g.push_back(to_ratfunc(e));
    gens.push_back(std::move(g));
  }
  return build_jets(gens, web.vars, p, k, closed);
}

Matrix<Expr> prolongation(const Web& web, int i, int p, unsigned h, std::size_t lambda) {
  const auto as = subsets(web.q, p);
  const auto lo = homogeneous(web.q, h);
  const auto hi = homogeneous(web.q, h + 1);
  Matrix<Expr> out(as.size() * lo.size(), as.size() * hi.size());
  for (int a = 0; a < web.q; ++a) {
    Expr du = differentiate(web.foliations[i].generators[a], web.vars[lambda]);
    for (std::size_t ai = 0; ai < as.size(); ++ai)
      for (std::size_t ki = 0; ki < lo.size(); ++ki)
        out(ai * lo.size() + ki, ai * hi.size() + index_of(hi, plus_unit(lo[ki], a))) += du;
  }
  return out;
}

template <class T>
std::vector<T> prolong(const JetSystem<T>& sys, const std::vector<std::vector<std::vector<T>>>& du,
                       const std::vector<T>& jet, unsigned order, std::size_t lambda) {
  std::vector<T> out(sys.plain_col_start[order], T(0));
  const auto as = subsets(sys.q, sys.p);
  for (unsigned h = 0; h < order; ++h) {
    const auto lo = homogeneous(sys.q, h);
    const auto hi = homogeneous(sys.q, h + 1);
    for (std::size_t ai = 0; ai < as.size(); ++ai)
      for (std::size_t ki = 0; ki < lo.size(); ++ki)
        for (int i = 0; i < sys.d; ++i) {
          T v(0);
          for (int a = 0; a < sys.q; ++a) {
            const T& w = jet[sys.plain_index(i, ai * hi.size() + index_of(hi, plus_unit(lo[ki], a)), h + 1)];
            if (value_is_zero(w) || value_is_zero(du[i][a][lambda])) continue;
            v = v + w * du[i][a][lambda];
          }
          out[sys.plain_index(i, ai * lo.size() + ki, h)] = v;
        }
  }
  return out;
}

std::string dump_blocks(const JetSystem<Expr>& sys) {
  nlohmann::ordered_json j;
  for (unsigned ell = 0; ell <= sys.k; ++ell)
    for (unsigned h = 0; h <= ell; ++h) {
      Matrix<Expr> b = sys.block(ell, h);
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (std::size_t r = 0; r < b.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(canonical_string(b(r, c)));
        rows.push_back(row);
      }
      j[(sys.closed ? "Pt_" : "P_") + std::to_string(h) + "^(" + std::to_string(ell) + ")"] = rows;
    }
  return j.dump(2);
}

template class CoeffTable<Expr>;
template class CoeffTable<RatFunc>;
template struct JetSystem<Expr>;
template struct JetSystem<RatFunc>;
template CoeffTable<Expr> m_coeffs(const std::vector<Expr>&, const Expr&, const std::vector<VarId>&, unsigned);
template CoeffTable<RatFunc> m_coeffs(const std::vector<RatFunc>&, const RatFunc&, const std::vector<VarId>&,
                                      unsigned);
template JetSystem<Expr> build_jets(const std::vector<std::vector<Expr>>&, const std::vector<VarId>&, int, unsigned,
                                    bool);
template JetSystem<RatFunc> build_jets(const std::vector<std::vector<RatFunc>>&, const std::vector<VarId>&, int,
                                       unsigned, bool);
template std::vector<Expr> prolong(const JetSystem<Expr>&, const std::vector<std::vector<std::vector<Expr>>>&,
                                   const std::vector<Expr>&, unsigned, std::size_t);
template std::vector<RatFunc> prolong(const JetSystem<RatFunc>&,
                                      const std::vector<std::vector<std::vector<RatFunc>>>&,
                                      const std::vector<RatFunc>&, unsigned, std::size_t);

}  // namespace webgeom
