#include <doctest.h>

#include "test_support.hpp"
#include "webgeom/analysis.hpp"
#include "webgeom/errors.hpp"
#include "webgeom/relation.hpp"
#include "webgeom/report.hpp"
#include "webgeom/sampling.hpp"
#include "webgeom/symbolic_matrix.hpp"

using namespace webgeom;
using namespace webgeom::testing;

namespace {

RelationSpec data_relation(const std::string& name, const Web& web) { return load_relation(relation_path(name), web); }

const OrderRecord& order(const OrdinarityReport& r, unsigned k) {
  for (const auto& o : r.orders)
    if (o.k == k) return o;
  throw std::out_of_range("order not in report");
}

}  // namespace

TEST_CASE("curve template with affine fourth foliation cannot be 1-ordinary") {
  OrdinarityReport r = is_p_ordinary(data_web("parallel_lines"), 1);
  CHECK(r.verdict == Verdict::NotOrdinary);
  REQUIRE(r.bracket.has_value());
  CHECK(*r.bracket);
  CHECK_FALSE(r.routed_to_closed);
  CHECK(r.points.size() == 3);
  CHECK(r.horizon == 4);  // k0 = 3, P_3 not square
}

TEST_CASE("p = q routes to the closed system") {
  Web w = data_web("w_lambda_2");
  OrdinarityReport r = is_p_ordinary(w, 2);
  CHECK(r.routed_to_closed);
  CHECK(r.closed);
  CHECK(r.verdict == Verdict::Ordinary);
  CHECK_FALSE(r.bracket.has_value());
  const OrderRecord& top = order(r, 1);
  CHECK(top.rows == 9);
  CHECK(top.cols == 8);
  CHECK(top.max_rank == 8);
  for (long rank : top.ranks) CHECK(rank == 8);

  BoundReport b = bound_report(w, 2);
  CHECK_FALSE(b.infinite);
  REQUIRE(b.rank_bound.has_value());
  CHECK(*b.rank_bound == b.profile.pi_prime);
  CHECK(*b.rank_bound == 1);
}

TEST_CASE("four-webs in dimension four lose rank at order one") {
  Web w3 = data_web("goldberg_w3");
  OrdinarityReport strong = is_strongly_p_ordinary(w3, 1);
  CHECK(strong.verdict == Verdict::NotOrdinary);
  const OrderRecord& k1 = order(strong, 1);
  CHECK(k1.cols == 12);
  CHECK(k1.max_rank == 10);
  for (long rank : k1.ranks) CHECK(rank == 9);

  AnalysisOptions opt;
  opt.with_m = false;
  OrdinarityReport plain = is_p_ordinary(data_web("goldberg_w2"), 1, opt);
  CHECK(plain.verdict == Verdict::NotOrdinary);
  CHECK_FALSE(order(plain, 1).rho.has_value());
  for (long rank : order(plain, 1).ranks) CHECK(rank <= 14);
}

TEST_CASE("single foliation: no threshold, order zero decides") {
  Web one = make_web("one", {"x", "y", "z"}, 2, {{"x", "y+z^2"}});
  OrdinarityReport r = is_p_ordinary(one, 1);
  CHECK(r.horizon == 0);
  CHECK(r.verdict == Verdict::Ordinary);
  BoundReport b = bound_report(one, 1);
  CHECK(b.profile.pi0 == 0);
  CHECK(b.profile.pi_prime == 0);
}

TEST_CASE("explicit points and exact backend") {
  Web w = data_web("w_lambda_half");
  AnalysisOptions opt;
  opt.backend = Backend::Exact;
  opt.explicit_points = {parse_point("x=1/3,y=2,z=5", w.variables)};
  OrdinarityReport r = is_strongly_p_ordinary(w, 2, opt);
  CHECK(r.points == std::vector<std::string>{"x=1/3,y=2,z=5"});
  CHECK(r.verdict == Verdict::Ordinary);

  // Serial and parallel rank profiles coincide.
  auto pts = sample_points(w.vars, 3, 0);
  AnalysisOptions ser;
  ser.parallel = false;
  CHECK(rank_profile(w, 1, 2, false, pts, ser) == rank_profile(w, 1, 2, false, pts, AnalysisOptions{}));
}

TEST_CASE("rho increments are bounded by the new columns") {
  Web w = data_web("w_lambda_1");
  AnalysisOptions opt;
  auto pts = sample_points(w.vars, 2, 0);
  auto prof = rank_profile(w, 2, 2, true, pts, opt);
  REQUIRE(prof.size() == 3);
  for (std::size_t k = 0; k < prof.size(); ++k) {
    REQUIRE(prof[k].rho.has_value());
    CHECK(*prof[k].rho >= 0);
    if (k > 0) CHECK(*prof[k].rho - *prof[k - 1].rho <= static_cast<long>(prof[k].cols - prof[k].max_rank));
  }
}

TEST_CASE("relation goldens") {
  Web w3 = data_web("goldberg_w3");
  RelationVerdict v = verify_relation(w3, data_relation("goldberg_w3_p2", w3));
  CHECK(v.is_abelian);
  CHECK(v.is_closed);
  CHECK_FALSE(v.heuristic);
  CHECK(v.trace.size() == 6);

  RelationVerdict bad = verify_relation(w3, data_relation("goldberg_w3_p2_mutated", w3));
  CHECK_FALSE(bad.is_abelian);
  bool nonzero = false;
  for (const auto& r : bad.trace) nonzero = nonzero || !r.zero;
  CHECK(nonzero);

  Web w2 = data_web("goldberg_w2");
  RelationVerdict v2 = verify_relation(w2, data_relation("goldberg_w2_p2", w2));
  CHECK(v2.is_abelian);
  CHECK(v2.is_closed);

  Web w1c = data_web("goldberg_w1_corrected");
  RelationVerdict v1 = verify_relation(w1c, data_relation("goldberg_w1_p2", w1c));
  CHECK(v1.is_abelian);
  CHECK(v1.is_closed);
  CHECK(v1.heuristic);
  Web w1 = data_web("goldberg_w1");
  CHECK_FALSE(verify_relation(w1, data_relation("goldberg_w1_p2", w1)).is_abelian);

  Web zero_web = data_web("w_lambda_0");
  CHECK(verify_relation(zero_web, data_relation("zero_p2", zero_web)).is_abelian);
}

TEST_CASE("cobord goldens and the printed variants") {
  for (const char* lam : {"0", "1"}) {
    Web w = data_web(std::string("w_lambda_") + lam);
    RelationSpec eta = data_relation(std::string("w_lambda_") + lam + "_eta", w);
    RelationSpec omega = data_relation(std::string("w_lambda_") + lam + "_omega", w);
    CobordVerdict c = verify_cobord(w, eta, omega);
    CHECK(c.ok);
    CHECK(c.derivative_matches);
    CHECK(c.omega.is_closed);
  }
  Web pl = data_web("parallel_lines");
  CHECK(verify_cobord(pl, data_relation("parallel_lines_eta", pl), data_relation("parallel_lines_omega", pl)).ok);

  Web w0 = data_web("w_lambda_0");
  CHECK_FALSE(verify_relation(w0, data_relation("w_lambda_0_omega_printed", w0)).is_abelian);
  Web w1 = data_web("w_lambda_1");
  CHECK_FALSE(verify_relation(w1, data_relation("w_lambda_1_eta_printed", w1)).is_abelian);
}

TEST_CASE("relation file errors") {
  Web w = data_web("w_lambda_1");
  CHECK_THROWS_AS(parse_relation("{\"p\": 2, \"forms\": [{\"foliation\": 9, \"components\": {\"1,2\": \"1\"}}]}", w),
                  InvalidArgument);
  CHECK_THROWS_AS(parse_relation("{\"p\": 3, \"forms\": []}", w), InvalidArgument);
  CHECK_THROWS_AS(parse_relation("{\"p\": 2, \"forms\": [{\"foliation\": 1, \"components\": {\"1,2\": \"u1+\"}}]}", w),
                  ParseError);
  CHECK_THROWS_AS(parse_relation("{\"p\": 2, \"forms\": [{\"foliation\": 1, \"components\": {\"1,2\": \"x\"}}]}", w),
                  ParseError);
}

TEST_CASE("exterior derivative in slot variables") {
  auto u = slot_vars(2);
  std::map<Subset, Expr> eta{{Subset{0}, parse_expression("u1*u2")}, {Subset{1}, parse_expression("u1^2")}};
  auto d = exterior_derivative(eta, 2);
  REQUIRE(d.count(Subset{0, 1}));
  // d(u1 u2 du1 + u1^2 du2) = (2 u1 - u1) du1^du2
  CHECK(to_ratfunc(d.at(Subset{0, 1})) == RatFunc::var(u[0]));
  auto dd = exterior_derivative(d, 2);
  for (const auto& [k, v] : dd) CHECK(to_ratfunc(v).is_zero());
}

TEST_CASE("a relation's jet lies in the kernel of M_k") {
  for (const auto& [web_name, rel_name] : {std::pair{"parallel_lines", "parallel_lines_omega"},
                                           std::pair{"goldberg_w3", "goldberg_w3_p2"},
                                           std::pair{"w_lambda_0", "w_lambda_0_omega"}}) {
    Web w = data_web(web_name);
    RelationSpec rel = data_relation(rel_name, w);
    JetSystem<Expr> sys = build_plain(w, rel.p, 2);
    for (const Point& pt : sample_points(w.vars, 2, 7)) {
      std::vector<mpq_class> jet = relation_jet(w, rel, sys, 2, pt);
      Matrix<mpq_class> m = eval_exact(sys.M(2), pt);
      REQUIRE(m.cols() == jet.size());
      for (const mpq_class& r : m * jet) CHECK(r == 0);
    }
  }
}

TEST_CASE("reports round-trip through JSON") {
  Web w = data_web("w_lambda_2");
  OrdinarityReport r = is_p_ordinary(w, 2);
  report::Json j = report::to_json(r);
  CHECK(report::ordinarity_from_json(j) == r);
  CHECK(report::ordinarity_from_json(report::Json::parse(j.dump())) == r);
  OrdinarityReport plain = is_p_ordinary(data_web("parallel_lines"), 1);
  CHECK(report::ordinarity_from_json(report::to_json(plain)) == plain);

  combinat::BoundProfile b = combinat::bound_profile(4, 4, 2, 2);
  combinat::BoundProfile back = report::bound_profile_from_json(report::to_json(b));
  CHECK(back.pi_henaut == b.pi_henaut);
  CHECK(back.k0 == b.k0);
  CHECK(back.k1 == b.k1);
  CHECK(back.excess_ok == b.excess_ok);
  CHECK(report::to_json(back).dump() == report::to_json(b).dump());
}
