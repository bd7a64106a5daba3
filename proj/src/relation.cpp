#include "webgeom/relation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include "webgeom/errors.hpp"
#include "webgeom/koszul.hpp"
#include "webgeom/parser.hpp"
#include "webgeom/sampling.hpp"

namespace webgeom {

using nlohmann::json;

std::vector<std::string> slot_names(int q) {
  std::vector<std::string> out;
  for (int a = 1; a <= q; ++a) out.push_back("u" + std::to_string(a));
  return out;
}

std::vector<VarId> slot_vars(int q) {
  std::vector<VarId> out;
  for (const auto& s : slot_names(q)) out.push_back(intern(s));
  return out;
}

namespace {

Subset parse_subset(const std::string& key, int q, int p) {
  Subset s;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() && item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
      s.push_back(v - 1);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad component index \"" + key + "\"");
    }
  }
  std::sort(s.begin(), s.end());
  if (static_cast<int>(s.size()) != p || std::adjacent_find(s.begin(), s.end()) != s.end() ||
      (!s.empty() && (s.front() < 0 || s.back() >= q)))
    throw InvalidArgument("component \"" + key + "\" is not a " + std::to_string(p) + "-subset of 1.." + std::to_string(q));
  return s;
}

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

RelationSpec parse_relation(std::string_view text, const Web& web) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON", line, col);
  }
  RelationSpec rel;
  const auto names = slot_names(web.q);
  try {
    rel.p = j.at("p").get<int>();
    if (rel.p < 1 || rel.p > web.q) throw InvalidArgument("relation degree p must satisfy 1 <= p <= q");
    rel.forms.assign(web.d(), {});
    for (const auto& f : j.at("forms")) {
      int i = f.at("foliation").get<int>();
      if (i < 1 || i > web.d()) throw InvalidArgument("unknown foliation index " + std::to_string(i));
      for (const auto& [key, value] : f.at("components").items()) {
        Subset a = parse_subset(key, web.q, rel.p);
        std::string s = value.get<std::string>();
        try {
          rel.forms[i - 1][a] = rel.forms[i - 1][a] + parse_expression(s, &names);
        } catch (const ParseError& e) {
          std::size_t at = text.find(json(s).dump());
          if (at == std::string_view::npos) throw;
          auto [line, col] = line_column(text, at + 1);
          throw ParseError("in expression \"" + s + "\": " + e.message(), line, col + e.column() - 1);
        }
      }
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("relation file: ") + e.what());
  }
  return rel;
}

RelationSpec load_relation(const std::string& path, const Web& web) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_relation(ss.str(), web);
}

std::map<Subset, Expr> exterior_derivative(const std::map<Subset, Expr>& form, int q) {
  const auto vars = slot_vars(q);
  std::map<Subset, std::vector<Expr>> terms;
  for (const auto& [a, f] : form)
    for (int l = 0; l < q; ++l) {
      if (std::find(a.begin(), a.end(), l) != a.end()) continue;
      Expr df = differentiate(f, vars[l]);
      if (df.is_zero()) continue;
      Subset c = a;
      c.insert(std::upper_bound(c.begin(), c.end(), l), l);
      long below = std::count_if(a.begin(), a.end(), [l](int x) { return x < l; });
      terms[c].push_back(below % 2 ? -df : df);
    }
  std::map<Subset, Expr> out;
  for (auto& [c, ts] : terms) out[c] = add(std::move(ts));
  return out;
}

Residual test_zero(const Expr& e, const std::vector<VarId>& vars, const ZeroTestOptions& opt, std::string label) {
  Residual r;
  r.label = std::move(label);
  if (e.is_rational()) {
    RatFunc f = to_ratfunc(e);
    r.zero = f.is_zero();
    r.value = f.to_string();
    return r;
  }
  r.numeric = true;
  PrecisionScope scope(opt.digits);
  using boost::multiprecision::abs;
  // Summand magnitudes set the scale of the comparison.
  std::vector<Expr> parts = e.kind() == ExprKind::Add ? e.args() : std::vector<Expr>{e};
  PointSampler sampler(vars, opt.seed);
  std::size_t good = 0;
  BigFloat worst = 0;
  bool zero = true;
  for (std::size_t draws = 0; good < opt.points; ++draws) {
    if (draws >= opt.points * kSampleRetries)
      throw CompositionDomainError("no sample point where \"" + to_string(e) + "\" can be evaluated");
    Point pt = sampler.next();
    try {
      FloatEvaluator ev(pt);
      BigFloat scale = 1;
      BigFloat total = 0;
      for (const Expr& t : parts) {
        BigFloat v = ev(t);
        scale = std::max(scale, BigFloat(abs(v)));
        total += v;
      }
      BigFloat rel = abs(total) / scale;
      if (rel > worst) worst = rel;
      if (rel > BigFloat(opt.threshold)) zero = false;
      ++good;
    } catch (const DivisionByZero&) {
    } catch (const DomainError&) {
    }
  }
  r.zero = zero;
  r.value = to_string(worst, 6);
  return r;
}

Expr compose(const Web& web, int i, const Expr& f) {
  const auto vars = slot_vars(web.q);
  std::map<VarId, Expr> bind;
  for (int a = 0; a < web.q; ++a) bind[vars[a]] = web.foliations[i].generators[a];
  return substitute(f, bind);
}

RelationVerdict verify_relation(const Web& web, const RelationSpec& rel, const ZeroTestOptions& opt) {
  if (static_cast<int>(rel.forms.size()) != web.d()) throw InvalidArgument("relation has the wrong number of foliations");
  RelationVerdict v;
  std::vector<std::map<Subset, Expr>> composed(web.d());
  for (int i = 0; i < web.d(); ++i)
    for (const auto& [a, f] : rel.forms[i]) composed[i][a] = compose(web, i, f);
  for (const Subset& b : subsets(web.n(), rel.p)) {
    std::vector<Expr> terms;
    for (int i = 0; i < web.d(); ++i)
      for (const auto& [a, g] : composed[i]) {
        if (g.is_zero()) continue;
        terms.push_back(g * jacobian_minor(web, i, a, b));
      }
    std::string label = "B={";
    for (std::size_t k = 0; k < b.size(); ++k) label += (k ? "," : "") + web.variables[b[k]];
    Residual r = test_zero(add(std::move(terms)), web.vars, opt, label + "}");
    v.is_abelian = v.is_abelian && r.zero;
    v.heuristic = v.heuristic || r.numeric;
    v.trace.push_back(std::move(r));
  }
  const auto slots = slot_vars(web.q);
  for (int i = 0; i < web.d(); ++i)
    for (const auto& [c, g] : exterior_derivative(rel.forms[i], web.q)) {
      Residual r = test_zero(g, slots, opt, "foliation " + std::to_string(i + 1) + " C={" + subset_string(c) + "}");
      v.is_closed = v.is_closed && r.zero;
      v.heuristic = v.heuristic || r.numeric;
      v.closure.push_back(std::move(r));
    }
  return v;
}

CobordVerdict verify_cobord(const Web& web, const RelationSpec& eta, const RelationSpec& omega,
                            const ZeroTestOptions& opt) {
  if (eta.p + 1 != omega.p) throw InvalidArgument("cobord needs deg eta = deg omega - 1");
  CobordVerdict out;
  out.eta = verify_relation(web, eta, opt);
  out.omega = verify_relation(web, omega, opt);
  const auto slots = slot_vars(web.q);
  for (int i = 0; i < web.d(); ++i) {
    auto de = exterior_derivative(eta.forms[i], web.q);
    std::map<Subset, std::vector<Expr>> diff;
    for (const auto& [c, g] : de) diff[c].push_back(g);
    for (const auto& [c, g] : omega.forms[i]) diff[c].push_back(-g);
    for (auto& [c, ts] : diff) {
      Residual r = test_zero(add(std::move(ts)), slots, opt,
                             "foliation " + std::to_string(i + 1) + " C={" + subset_string(c) + "}");
      out.derivative_matches = out.derivative_matches && r.zero;
      out.mismatches.push_back(std::move(r));
    }
  }
  out.ok = out.derivative_matches && out.eta.is_abelian && out.omega.is_abelian;
  return out;
}

std::vector<mpq_class> relation_jet(const Web& web, const RelationSpec& rel, const JetSystem<Expr>& sys,
                                    unsigned order, const Point& pt) {
  const auto slots = slot_vars(web.q);
  std::vector<mpq_class> jet(sys.plain_col_start[order + 1]);
  for (int i = 0; i < web.d(); ++i) {
    Point slot_pt;
    for (int a = 0; a < web.q; ++a) slot_pt[slots[a]] = eval_exact(web.foliations[i].generators[a], pt);
    for (unsigned h = 0; h <= order; ++h) {
      auto idx = symbol_basis(web.q, rel.p, h);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        auto it = rel.forms[i].find(idx[r].a);
        if (it == rel.forms[i].end()) continue;
        std::vector<unsigned> ex(idx[r].k.begin(), idx[r].k.end());
        Expr dk = derive_multi(it->second, slots, ex);
        jet[sys.plain_index(i, r, h)] = eval_exact(dk, slot_pt);
      }
    }
  }
  return jet;
}

}  // namespace webgeom
