#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "webgeom/bigfloat.hpp"
#include "webgeom/poly.hpp"
#include "webgeom/ratfunc.hpp"
#include "webgeom/symbol.hpp"

namespace webgeom {

enum class ExprKind : std::uint8_t { Const, Var, Add, Mul, Pow, Sqrt, Ln, Atan };

struct ExprNode;

// Immutable shared expression DAG. Constructors simplify locally: sums and products are
// flattened, constants folded, like terms and like factors merged, and integer powers of
// products distributed. Subtraction and division are expressed through Add, Mul and Pow.
class Expr {
 public:
  Expr();  // zero
  Expr(long v);              // NOLINT(google-explicit-constructor)
  Expr(const mpq_class& v);  // NOLINT(google-explicit-constructor)
  static Expr variable(VarId v);
  static Expr variable(std::string_view name) { return variable(intern(name)); }

  ExprKind kind() const;
  const mpq_class& value() const;        // Const
  VarId var() const;                     // Var
  int exponent() const;                  // Pow
  const std::vector<Expr>& args() const; // Add, Mul, Pow (base), functions
  std::size_t hash() const;
  // True when no sqrt/ln/atan occurs.
  bool is_rational() const;
  bool is_const() const { return kind() == ExprKind::Const; }
  bool is_zero() const;
  bool is_one() const;
  const ExprNode* node() const { return node_.get(); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  // Structural equality after local simplification; not a zero test.
  bool same(const Expr& o) const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
  friend struct ExprBuilder;
};

Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, int e);
Expr sqrt(const Expr& a);
Expr ln(const Expr& a);
Expr atan(const Expr& a);

std::string to_string(const Expr& e);

// Memoizing partial derivative along one variable; reuse across related expressions.
class Differentiator {
 public:
  explicit Differentiator(VarId v) : v_(v) {}
  Expr operator()(const Expr& e);

 private:
  VarId v_;
  std::unordered_map<const ExprNode*, std::pair<Expr, Expr>> memo_;
};

Expr differentiate(const Expr& e, VarId v);
// Iterated partials: exponents[j] derivatives along vars[j].
Expr derive_multi(const Expr& e, const std::vector<VarId>& vars, const std::vector<unsigned>& exponents);

Expr substitute(const Expr& e, const std::map<VarId, Expr>& bindings);

// Exact evaluation. Throws ExactUnsupported on sqrt/ln/atan, DivisionByZero when a negative
// power hits a vanishing base, InvalidArgument on unbound variables.
class ExactEvaluator {
 public:
  explicit ExactEvaluator(const Point& pt) : pt_(pt) {}
  mpq_class operator()(const Expr& e);

 private:
  const Point& pt_;
  std::unordered_map<const ExprNode*, mpq_class> memo_;
};

// Evaluation at the current BigFloat default precision. Throws DomainError for sqrt of a
// negative or ln of a nonpositive value, DivisionByZero for an exactly vanishing base.
class FloatEvaluator {
 public:
  explicit FloatEvaluator(const Point& pt);
  BigFloat operator()(const Expr& e);

 private:
  std::map<VarId, BigFloat> pt_;
  std::unordered_map<const ExprNode*, BigFloat> memo_;
};

mpq_class eval_exact(const Expr& e, const Point& pt);
BigFloat eval_float(const Expr& e, const Point& pt, unsigned digits = kDefaultDigits);

// Throws ExactUnsupported for transcendental expressions, DivisionByZero for 1/0.
RatFunc to_ratfunc(const Expr& e);

class RatFuncConverter {
 public:
  RatFunc operator()(const Expr& e);

 private:
  std::unordered_map<const ExprNode*, std::pair<Expr, RatFunc>> memo_;
};

Expr to_expr(const Poly& p);
Expr to_expr(const RatFunc& f);

// Free variables in first-occurrence order.
std::vector<VarId> free_variables(const Expr& e);

// Canonical string when rational, otherwise the tree printout.
std::string canonical_string(const Expr& e);

}  // namespace webgeom
