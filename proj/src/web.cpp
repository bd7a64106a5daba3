#include "webgeom/web.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "webgeom/errors.hpp"
#include "webgeom/parser.hpp"
#include "webgeom/symbolic_matrix.hpp"

namespace webgeom {

using nlohmann::json;

bool Web::is_rational() const {
  for (const auto& f : foliations)
    for (const auto& g : f.generators)
      if (!g.is_rational()) return false;
  return true;
}

Web make_web(std::string name, std::vector<std::string> variables, int q, std::vector<Foliation> foliations) {
  Web w;
  w.name = std::move(name);
  w.variables = std::move(variables);
  for (const auto& v : w.variables) w.vars.push_back(intern(v));
  w.q = q;
  w.foliations = std::move(foliations);
  const int n = w.n();
  if (n < 2) throw InvalidArgument("web needs at least two variables");
  if (q < 1 || q > n - 1) throw InvalidArgument("codimension must satisfy 1 <= q <= n-1");
  if (w.foliations.empty()) throw InvalidArgument("web has no foliations");
  for (std::size_t i = 0; i < w.foliations.size(); ++i)
    if (static_cast<int>(w.foliations[i].generators.size()) != q)
      throw InvalidArgument("foliation " + std::to_string(i + 1) + " does not have q generators");
  return w;
}

Web make_web(std::string name, std::vector<std::string> variables, int q,
             const std::vector<std::vector<std::string>>& generators) {
  std::vector<Foliation> fs;
  for (const auto& gens : generators) {
    Foliation f;
    for (const auto& g : gens) f.generators.push_back(parse_expression(g, &variables));
    fs.push_back(std::move(f));
  }
  return make_web(std::move(name), std::move(variables), q, std::move(fs));
}

namespace {

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

// Re-anchors an expression parse error at the string literal's position in the file.
[[noreturn]] void rethrow_in_file(std::string_view text, const std::string& expr, const ParseError& e) {
  std::string quoted = json(expr).dump();
  std::size_t at = text.find(quoted);
  if (at == std::string_view::npos) throw e;
  auto [line, col] = line_column(text, at + 1);
  // Expressions are single-line strings: shift by the inner column.
  throw ParseError("in expression \"" + expr + "\": " + e.message(), line, col + e.column() - 1);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON", line, col);
  }
}

}  // namespace

Web parse_web(std::string_view text) {
  json j = parse_json(text);
  try {
    std::string name = j.value("name", std::string("web"));
    auto variables = j.at("variables").get<std::vector<std::string>>();
    int q = j.at("codimension").get<int>();
    if (j.contains("dimension") && j.at("dimension").get<int>() != static_cast<int>(variables.size()))
      throw InvalidArgument("dimension does not match the number of variables");
    std::vector<Foliation> fs;
    for (const auto& f : j.at("foliations")) {
      Foliation fol;
      for (const auto& g : f.at("generators")) {
        std::string s = g.get<std::string>();
        try {
          fol.generators.push_back(parse_expression(s, &variables));
        } catch (const ParseError& e) {
          rethrow_in_file(text, s, e);
        }
      }
      fs.push_back(std::move(fol));
    }
    return make_web(std::move(name), std::move(variables), q, std::move(fs));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("web file: ") + e.what());
  }
}

Web load_web(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_web(ss.str());
}

std::string web_to_json(const Web& web) {
  json j;
  j["name"] = web.name;
  j["dimension"] = web.n();
  j["codimension"] = web.q;
  j["variables"] = web.variables;
  j["foliations"] = json::array();
  for (const auto& f : web.foliations) {
    json g = json::array();
    for (const auto& e : f.generators) g.push_back(to_string(e));
    j["foliations"].push_back({{"generators", g}});
  }
  return j.dump(2);
}

Matrix<Expr> jacobian(const Web& web, int i) {
  Matrix<Expr> m(web.q, web.n());
  for (int a = 0; a < web.q; ++a)
    for (int b = 0; b < web.n(); ++b) m(a, b) = differentiate(web.foliations[i].generators[a], web.vars[b]);
  return m;
}

Expr jacobian_minor(const Web& web, int i, const Subset& a, const Subset& b) {
  if (a.size() != b.size()) throw InvalidArgument("jacobian_minor: |A| != |B|");
  Matrix<Expr> m(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c)
      m(r, c) = differentiate(web.foliations[i].generators[a[r]], web.vars[b[c]]);
  return determinant(m);
}

ValidationReport validate(const Web& web, const std::vector<Point>& points) {
  ValidationReport rep;
  std::vector<Matrix<Expr>> jac;
  for (int i = 0; i < web.d(); ++i) jac.push_back(jacobian(web, i));
  auto best_rank = [&](const Matrix<Expr>& m, std::size_t& where) {
    std::size_t best = 0;
    bool any = false;
    for (std::size_t k = 0; k < points.size(); ++k) {
      try {
        std::size_t r = rank_at(m, AtPoint{points[k]});
        if (!any || r > best) {
          best = r;
          where = k;
          any = true;
        }
      } catch (const Error&) {
        // Singular evaluation point: skip.
      }
    }
    return best;
  };
  for (int i = 0; i < web.d(); ++i) {
    std::size_t where = 0;
    std::size_t r = best_rank(jac[i], where);
    if (r < static_cast<std::size_t>(web.q)) {
      rep.valid = false;
      rep.issues.push_back({"foliation_rank", i, -1, where, r, static_cast<std::size_t>(web.q)});
    }
  }
  const std::size_t want = std::min(2 * web.q, web.n());
  for (int i = 0; i < web.d(); ++i)
    for (int j = i + 1; j < web.d(); ++j) {
      std::size_t where = 0;
      std::size_t r = best_rank(jac[i].stacked(jac[j]), where);
      if (r < want) {
        rep.valid = false;
        rep.issues.push_back({"pairwise_rank", i, j, where, r, want});
      }
    }
  return rep;
}

std::vector<std::vector<Expr>> tangent_fields(const Web& web) {
  if (web.q != web.n() - 1) throw WrongCodimension("tangent fields need q = n-1");
  const int n = web.n();
  std::vector<std::vector<Expr>> out;
  Subset rows(web.q);
  for (int a = 0; a < web.q; ++a) rows[a] = a;
  for (int i = 0; i < web.d(); ++i) {
    std::vector<Expr> x(n);
    for (int l = 0; l < n; ++l) {
      Subset cols;
      for (int b = 0; b < n; ++b)
        if (b != l) cols.push_back(b);
      Expr minor = jacobian_minor(web, i, rows, cols);
      // Expansion of det(du; J) along the first row: du(X) is a determinant with a repeated row.
      x[l] = (l % 2 == 0) ? minor : -minor;
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<Expr> lie_bracket(const std::vector<Expr>& x, const std::vector<Expr>& y, const std::vector<VarId>& vars) {
  std::vector<Expr> out(vars.size());
  for (std::size_t m = 0; m < vars.size(); ++m) {
    std::vector<Expr> terms;
    for (std::size_t l = 0; l < vars.size(); ++l) {
      terms.push_back(x[l] * differentiate(y[m], vars[l]));
      terms.push_back(-(y[l] * differentiate(x[m], vars[l])));
    }
    out[m] = add(std::move(terms));
  }
  return out;
}

bool bracket_test(const Web& web, int i, int j, const std::vector<Point>& points) {
  if (web.q != web.n() - 1) throw WrongCodimension("bracket test needs q = n-1");
  if (i == j) throw InvalidArgument("bracket test needs i != j");
  auto fields = tangent_fields(web);
  auto br = lie_bracket(fields[i], fields[j], web.vars);
  Matrix<Expr> m(3, web.n());
  for (int l = 0; l < web.n(); ++l) {
    m(0, l) = fields[i][l];
    m(1, l) = fields[j][l];
    m(2, l) = br[l];
  }
  if (web.is_rational()) return rank_symbolic(m) <= 2;
  int yes = 0, total = 0;
  for (const Point& pt : points) {
    try {
      ++total;
      if (rank_at(m, AtPoint{pt}) <= 2) ++yes;
    } catch (const Error&) {
      --total;
    }
  }
  if (total == 0) throw PointSelectionFailed("bracket test: no usable sample point");
  return 2 * yes > total;
}

bool is_affine(const Web& web) {
  for (const auto& f : web.foliations)
    for (const auto& g : f.generators) {
      if (!g.is_rational()) return false;
      RatFunc r = to_ratfunc(g);
      if (!r.is_polynomial() || r.num().total_degree() > 1) return false;
    }
  return true;
}

}  // namespace webgeom
