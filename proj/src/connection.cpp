#include "webgeom/connection.hpp"

#include "webgeom/errors.hpp"
#include "webgeom/jets.hpp"
#include "webgeom/linalg.hpp"
#include "webgeom/symbolic_matrix.hpp"

namespace webgeom {

using combinat::Int;

const Matrix<RatFunc>& ConnectionData::omega_at(int l, int m) const {
  for (std::size_t t = 0; t < omega_index.size(); ++t)
    if (omega_index[t] == std::make_pair(l, m)) return omega[t];
  throw InvalidArgument("omega_at needs l < m");
}

namespace {

std::vector<RatFunc> derivative(const std::vector<RatFunc>& v, VarId x) {
  std::vector<RatFunc> out;
  out.reserve(v.size());
  for (const RatFunc& e : v) out.push_back(e.derivative(x));
  return out;
}

Matrix<RatFunc> derivative(const Matrix<RatFunc>& m, VarId x) {
  Matrix<RatFunc> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).derivative(x);
  return out;
}

Matrix<RatFunc> minus(const Matrix<RatFunc>& a, const Matrix<RatFunc>& b) {
  Matrix<RatFunc> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

}  // namespace

ConnectionData build_connection(const Web& web, int p, Variant variant,
                                const std::optional<std::vector<std::vector<RatFunc>>>& frame) {
  if (!web.is_rational()) throw TranscendentalUnsupported("curvature needs a rational web");
  combinat::check_parameters(web.n(), web.d(), web.q, p);
  if (p == web.q) variant = Variant::Closed;
  const bool closed = variant == Variant::Closed;
  const Int n = web.n(), d = web.d(), q = web.q;
  auto kk = closed ? combinat::k_one(n, d, q, p) : combinat::k_zero(n, d, q, p);
  bool calibrated = closed ? combinat::is_strongly_calibrated(n, d, q, p) : combinat::is_calibrated(n, d, q, p);
  if (!kk || !calibrated || *kk < 1)
    throw NotCalibrated("web is not " + std::string(closed ? "strongly " : "") + std::to_string(p) + "-calibrated");

  ConnectionData cd;
  cd.p = p;
  cd.variant = variant;
  cd.k = static_cast<unsigned>(*kk);
  cd.vars = web.vars;
  const unsigned k = cd.k;
  JetSystem<RatFunc> sys = build_rational(web, p, k, closed);

  Matrix<RatFunc> mprev = sys.M(k - 1);
  Matrix<RatFunc> top = sys.P(k);
  if (exact_rank(top) < top.cols()) throw NotOrdinary("top jet matrix is rank deficient");
  Matrix<RatFunc> coupling = sys.Q(k);

  if (frame) {
    cd.frame = *frame;
  } else {
    cd.frame = exact_kernel(mprev);
    for (auto& s : cd.frame) s = clear_denominators(s);
  }
  for (const auto& s : cd.frame) {
    if (s.size() != mprev.cols()) throw InvalidArgument("frame section has the wrong length");
    if (frame)
      for (const RatFunc& r : mprev * s)
        if (!r.is_zero()) throw InvalidArgument("frame section is not in ker M_{k-1}");
  }
  if (frame) {
    Matrix<RatFunc> f(mprev.cols(), cd.frame.size());
    for (std::size_t j = 0; j < cd.frame.size(); ++j)
      for (std::size_t r = 0; r < f.rows(); ++r) f(r, j) = cd.frame[j][r];
    if (exact_rank(f) < cd.frame.size()) throw InvalidArgument("frame sections are dependent");
  }

  std::vector<std::vector<std::vector<RatFunc>>> du(web.d(), std::vector<std::vector<RatFunc>>(web.q));
  for (int i = 0; i < web.d(); ++i)
    for (int a = 0; a < web.q; ++a) {
      RatFunc u = to_ratfunc(web.foliations[i].generators[a]);
      for (int l = 0; l < web.n(); ++l) du[i][a].push_back(u.derivative(web.vars[l]));
    }

  const std::size_t rho = cd.frame.size();
  std::vector<std::vector<RatFunc>> full_jets;
  for (const auto& s : cd.frame) {
    // Lift to order k: P_k w = -Q_k s.
    std::vector<RatFunc> rhs = coupling * s;
    for (auto& e : rhs) e = -e;
    std::vector<RatFunc> w;
    try {
      w = exact_solve(top, rhs);
    } catch (const Inconsistent&) {
      throw InvalidArgument("frame section is not in ker M_{k-1}");
    }
    std::vector<RatFunc> full = s;
    full.insert(full.end(), w.begin(), w.end());
    full_jets.push_back(sys.to_jet(full, k));
    cd.frame_jet.push_back(sys.to_jet(s, k - 1));
  }

  Matrix<RatFunc> fmat(sys.plain_col_start[k], rho);
  for (std::size_t j = 0; j < rho; ++j)
    for (std::size_t r = 0; r < fmat.rows(); ++r) fmat(r, j) = cd.frame_jet[j][r];

  cd.nabla_jet.assign(web.n(), {});
  for (int l = 0; l < web.n(); ++l) {
    Matrix<RatFunc> rhs(fmat.rows(), rho);
    for (std::size_t j = 0; j < rho; ++j) {
      std::vector<RatFunc> predicted = prolong(sys, du, full_jets[j], k, static_cast<std::size_t>(l));
      std::vector<RatFunc> ds = derivative(cd.frame_jet[j], web.vars[l]);
      std::vector<RatFunc> nabla(ds.size());
      for (std::size_t r = 0; r < ds.size(); ++r) nabla[r] = ds[r] - predicted[r];
      for (std::size_t r = 0; r < nabla.size(); ++r) rhs(r, j) = nabla[r];
      cd.nabla_jet[l].push_back(std::move(nabla));
    }
    try {
      cd.eta.push_back(exact_solve_many(fmat, rhs));
    } catch (const Inconsistent&) {
      throw NotOrdinary("covariant derivative leaves E: frame expansion is inconsistent");
    }
  }

  cd.flat = true;
  for (int l = 0; l < web.n(); ++l)
    for (int m = l + 1; m < web.n(); ++m) {
      Matrix<RatFunc> om = minus(derivative(cd.eta[m], web.vars[l]), derivative(cd.eta[l], web.vars[m]));
      Matrix<RatFunc> comm = minus(cd.eta[l] * cd.eta[m], cd.eta[m] * cd.eta[l]);
      for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) {
          om(i, j) += comm(i, j);
          if (!om(i, j).is_zero()) cd.flat = false;
        }
      cd.omega_index.emplace_back(l, m);
      cd.omega.push_back(std::move(om));
    }

  cd.m_plain = closed ? build_rational(web, p, k - 1, false).M(k - 1) : mprev;
  return cd;
}

void require_curve_template(const Web& web) {
  if (web.n() != 3 || web.q != 2 || web.d() != 4) throw TemplateMismatch("template needs n = 3, q = 2, d = 4");
  const int expect[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 2; ++a) {
      const Expr& g = web.foliations[i].generators[a];
      if (!g.is_rational() || !(to_ratfunc(g) == RatFunc::var(web.vars[expect[i][a]])))
        throw TemplateMismatch("foliations 1-3 must be (x,y), (y,z), (z,x)");
    }
  if (!web.is_rational()) throw TemplateMismatch("template needs rational phi, psi");
}

namespace {

struct TemplateData {
  RatFunc a, b, c, p, q, r, A, B, C;
};

TemplateData template_data(const Web& web) {
  require_curve_template(web);
  RatFunc phi = to_ratfunc(web.foliations[3].generators[0]);
  RatFunc psi = to_ratfunc(web.foliations[3].generators[1]);
  const auto& v = web.vars;
  TemplateData t;
  t.a = phi.derivative(v[0]);
  t.b = phi.derivative(v[1]);
  t.c = phi.derivative(v[2]);
  t.p = psi.derivative(v[0]);
  t.q = psi.derivative(v[1]);
  t.r = psi.derivative(v[2]);
  t.A = t.b * t.r - t.q * t.c;
  t.B = t.c * t.p - t.a * t.r;
  t.C = t.a * t.q - t.p * t.b;
  return t;
}

}  // namespace

std::pair<RatFunc, RatFunc> connection_form_components(const Web& web) {
  TemplateData t = template_data(web);
  if ((t.A * t.B * t.C).is_zero()) throw NotOrdinary("ABC vanishes identically");
  // E = ker P_0(2) has rank 1; normalize the frame to h_4 = 1.
  JetSystem<RatFunc> sys = build_rational(web, 2, 0, true);
  auto ker = exact_kernel(sys.M(0));
  if (ker.size() != 1) throw TemplateMismatch("ker P_0(2) is not of rank 1");
  std::vector<RatFunc> s = ker[0];
  RatFunc last = s[3];
  for (auto& e : s) e = e / last;
  ConnectionData cd = build_connection(web, 2, Variant::Closed, std::vector<std::vector<RatFunc>>{s});
  const RatFunc& ex = cd.eta[0](0, 0);
  const RatFunc& ey = cd.eta[1](0, 0);
  const RatFunc& ez = cd.eta[2](0, 0);
  // eta = H dphi + K dpsi: solve on the first pair of coordinates with a nonzero minor.
  struct Pair {
    const RatFunc &e1, &e2, &g1, &h1, &g2, &h2;
  };
  const Pair pairs[3] = {{ex, ey, t.a, t.p, t.b, t.q}, {ex, ez, t.a, t.p, t.c, t.r}, {ey, ez, t.b, t.q, t.c, t.r}};
  for (const auto& pr : pairs) {
    RatFunc det = pr.g1 * pr.h2 - pr.h1 * pr.g2;
    if (det.is_zero()) continue;
    RatFunc h = (pr.e1 * pr.h2 - pr.h1 * pr.e2) / det;
    RatFunc k = (pr.g1 * pr.e2 - pr.e1 * pr.g2) / det;
    return {h, k};
  }
  throw TemplateMismatch("dphi and dpsi are dependent");
}

std::pair<RatFunc, RatFunc> template_closed_forms(const Web& web) {
  TemplateData t = template_data(web);
  RatFunc abc = t.A * t.B * t.C;
  if (abc.is_zero()) throw NotOrdinary("ABC vanishes identically");
  const auto& v = web.vars;
  RatFunc ax = t.A.derivative(v[0]);
  RatFunc cz = t.C.derivative(v[2]);
  RatFunc h = (t.p * t.A * cz - t.r * ax * t.C) / abc;
  RatFunc k = (t.c * ax * t.C - t.a * t.A * cz) / abc;
  return {h, k};
}

FlatnessVerdict flatness_verdict(const ConnectionData& cd) {
  return {cd.flat, static_cast<Int>(cd.rank())};
}

}  // namespace webgeom
