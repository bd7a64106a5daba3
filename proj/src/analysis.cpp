#include "webgeom/analysis.hpp"

#include <algorithm>

#include "webgeom/errors.hpp"
#include "webgeom/jets.hpp"
#include "webgeom/sampling.hpp"

namespace webgeom {

using combinat::Int;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Ordinary: return "ordinary";
    case Verdict::NotOrdinary: return "not_ordinary";
    case Verdict::Undetermined: return "undetermined_at_points";
  }
  return "undetermined_at_points";
}

Verdict verdict_from_name(const std::string& s) {
  if (s == "ordinary") return Verdict::Ordinary;
  if (s == "not_ordinary") return Verdict::NotOrdinary;
  if (s == "undetermined_at_points") return Verdict::Undetermined;
  throw InvalidArgument("unknown verdict " + s);
}

std::vector<Point> choose_points(const Web& web, const AnalysisOptions& opt) {
  if (!opt.explicit_points.empty()) return opt.explicit_points;
  std::vector<Matrix<Expr>> jac;
  for (int i = 0; i < web.d(); ++i) jac.push_back(jacobian(web, i));
  auto accept = [&](const Point& pt) {
    PrecisionScope scope(opt.digits);
    try {
      for (int i = 0; i < web.d(); ++i) {
        FloatEvaluator ev(pt);
        for (const Expr& g : web.foliations[i].generators) ev(g);
        if (numeric_rank(eval_float(jac[i], pt), BigFloat(opt.tolerance)) < static_cast<std::size_t>(web.q)) return false;
      }
    } catch (const Error&) {
      return false;
    }
    return true;
  };
  return sample_points(web.vars, opt.points, opt.seed, accept);
}

namespace {

std::vector<long> ranks_of(const Matrix<Expr>& m, const std::vector<Point>& points, const AnalysisOptions& opt) {
  kernels::RankOptions ro{opt.backend, opt.digits, opt.tolerance};
  auto res = opt.parallel ? kernels::ranks_parallel(m, points, ro) : kernels::ranks_serial(m, points, ro);
  std::vector<long> out;
  for (const auto& r : res) out.push_back(r.ok ? static_cast<long>(r.rank) : -1L);
  return out;
}

long best_of(const std::vector<long>& v) { return v.empty() ? -1 : *std::max_element(v.begin(), v.end()); }

}  // namespace

std::vector<OrderRecord> rank_profile(const Web& web, int p, unsigned k_max, bool closed,
                                      const std::vector<Point>& points, const AnalysisOptions& opt) {
  if (opt.backend == Backend::Exact && !web.is_rational())
    throw ExactUnsupported("exact backend needs a rational web");
  JetSystem<Expr> sys = closed ? build_closed(web, p, k_max) : build_plain(web, p, k_max);
  std::vector<OrderRecord> out;
  for (unsigned k = 0; k <= k_max; ++k) {
    OrderRecord rec;
    rec.k = k;
    Matrix<Expr> pk = sys.P(k);
    rec.rows = pk.rows();
    rec.cols = pk.cols();
    if (closed)
      rec.max_rank = static_cast<std::size_t>(std::min(combinat::z(web.n(), p, k), web.d() * combinat::z(web.q, p, k)));
    else
      rec.max_rank = std::min(rec.rows, rec.cols);
    rec.ranks = ranks_of(pk, points, opt);
    rec.attained = best_of(rec.ranks) == static_cast<long>(rec.max_rank);
    if (opt.with_m) {
      Matrix<Expr> mk = sys.M(k);
      rec.m_rows = mk.rows();
      rec.m_cols = mk.cols();
      rec.m_ranks = ranks_of(mk, points, opt);
      long best = best_of(rec.m_ranks);
      if (best >= 0) rec.rho = static_cast<long>(rec.m_cols) - best;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<bool> bracket_criterion(const Web& web, int p, const std::vector<Point>& points) {
  if (web.q != web.n() - 1 || p > web.n() - 2) return std::nullopt;
  for (int i = 0; i < web.d(); ++i)
    for (int j = i + 1; j < web.d(); ++j)
      if (bracket_test(web, i, j, points)) return true;
  return false;
}

namespace {

OrdinarityReport ordinarity(const Web& web, int p, bool closed, const AnalysisOptions& opt) {
  combinat::check_parameters(web.n(), web.d(), web.q, p);
  OrdinarityReport rep;
  rep.p = p;
  rep.closed = closed;
  const Int n = web.n(), d = web.d(), q = web.q;
  auto k = closed ? combinat::k_one(n, d, q, p) : combinat::k_zero(n, d, q, p);
  rep.top_square = closed ? combinat::is_strongly_calibrated(n, d, q, p) : combinat::is_calibrated(n, d, q, p);
  // Without a threshold every P_k is overdetermined; order 0 decides injectivity.
  rep.horizon = k ? static_cast<int>(*k) + (rep.top_square ? 0 : 1) : 0;
  std::vector<Point> points = choose_points(web, opt);
  for (const Point& pt : points) rep.points.push_back(point_string(pt, web.variables));
  rep.bracket = bracket_criterion(web, p, points);
  rep.orders = rank_profile(web, p, static_cast<unsigned>(rep.horizon), closed, points, opt);
  bool undetermined = false;
  bool failed = false;
  for (const auto& o : rep.orders) {
    if (o.attained) continue;
    if (best_of(o.ranks) < 0) undetermined = true;
    else failed = true;
  }
  if (rep.bracket.value_or(false) || failed) rep.verdict = Verdict::NotOrdinary;
  else if (undetermined) rep.verdict = Verdict::Undetermined;
  else rep.verdict = Verdict::Ordinary;
  return rep;
}

}  // namespace

OrdinarityReport is_p_ordinary(const Web& web, int p, const AnalysisOptions& opt) {
  if (p == web.q) {
    OrdinarityReport rep = ordinarity(web, p, true, opt);
    rep.routed_to_closed = true;
    return rep;
  }
  return ordinarity(web, p, false, opt);
}

OrdinarityReport is_strongly_p_ordinary(const Web& web, int p, const AnalysisOptions& opt) {
  return ordinarity(web, p, true, opt);
}

BoundReport bound_report(const Web& web, int p, const AnalysisOptions& opt) {
  BoundReport rep;
  rep.profile = combinat::bound_profile(web.n(), web.d(), web.q, p);
  rep.plain = is_p_ordinary(web, p, opt);
  rep.strong = is_strongly_p_ordinary(web, p, opt);
  rep.infinite = rep.plain.bracket.value_or(false);
  if (!rep.infinite) {
    if (rep.plain.verdict == Verdict::Ordinary)
      rep.rank_bound = rep.plain.routed_to_closed ? rep.profile.pi_prime : rep.profile.pi0;
    if (rep.strong.verdict == Verdict::Ordinary) rep.closed_bound = rep.profile.pi_prime;
  }
  return rep;
}

}  // namespace webgeom
