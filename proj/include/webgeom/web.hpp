#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "webgeom/expr.hpp"
#include "webgeom/matrix.hpp"
#include "webgeom/multi_index.hpp"

namespace webgeom {

// q generators u_{i,1..q} of one foliation.
struct Foliation {
  std::vector<Expr> generators;
};

struct Web {
  std::string name;
  std::vector<std::string> variables;
  std::vector<VarId> vars;
  int q = 0;
  std::vector<Foliation> foliations;

  int n() const { return static_cast<int>(vars.size()); }
  int d() const { return static_cast<int>(foliations.size()); }
  bool is_rational() const;
};

// Throws InvalidArgument unless 1 <= q <= n-1, d >= 1 and every foliation has q generators.
Web make_web(std::string name, std::vector<std::string> variables, int q,
             const std::vector<std::vector<std::string>>& generators);
Web make_web(std::string name, std::vector<std::string> variables, int q, std::vector<Foliation> foliations);

// Web file: {"name", "dimension", "codimension", "variables", "foliations": [{"generators"}]}.
// Malformed JSON or expressions throw ParseError (line/column within the file text);
// inconsistent shapes throw InvalidArgument.
Web parse_web(std::string_view json_text);
Web load_web(const std::string& path);
std::string web_to_json(const Web& web);

// q x n jacobian of foliation i (0-based).
Matrix<Expr> jacobian(const Web& web, int i);

// det of (du_{i,a} / dx_b), a in A rows, b in B columns. 0-based indices.
Expr jacobian_minor(const Web& web, int i, const Subset& a, const Subset& b);

struct ValidationIssue {
  std::string kind;  // "foliation_rank" or "pairwise_rank"
  int i = -1;
  int j = -1;
  std::size_t point = 0;
  std::size_t rank = 0;
  std::size_t expected = 0;
};

struct ValidationReport {
  bool valid = true;
  std::vector<ValidationIssue> issues;
};

// Per-foliation jacobian rank q and pairwise stacked rank min(2q, n) at every point.
// A condition counts as failed only when it fails at every point (generic semantics).
ValidationReport validate(const Web& web, const std::vector<Point>& points);

// Requires q = n-1 (WrongCodimension). Components are signed maximal minors of the jacobian.
std::vector<std::vector<Expr>> tangent_fields(const Web& web);

// [X, Y]^m = sum_l X^l d_l Y^m - Y^l d_l X^m.
std::vector<Expr> lie_bracket(const std::vector<Expr>& x, const std::vector<Expr>& y, const std::vector<VarId>& vars);

// True iff X_i, X_j, [X_i, X_j] have rank <= 2. Symbolic for rational webs; otherwise the
// majority of numeric ranks at the given points. Requires q = n-1 and i != j.
bool bracket_test(const Web& web, int i, int j, const std::vector<Point>& points = {});

// Every generator of degree <= 1. Transcendental generators give false.
bool is_affine(const Web& web);

}  // namespace webgeom
