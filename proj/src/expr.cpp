#include "webgeom/expr.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "webgeom/errors.hpp"

namespace webgeom {

struct ExprNode {
  ExprKind kind = ExprKind::Const;
  mpq_class value;
  VarId var = 0;
  int exponent = 0;
  std::vector<Expr> args;
  std::size_t hash = 0;
  bool rational = true;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t hash_q(const mpq_class& q) {
  std::size_t h = static_cast<std::size_t>(sgn(q) + 2);
  h = mix(h, mpz_get_ui(q.get_num_mpz_t()));
  h = mix(h, mpz_get_ui(q.get_den_mpz_t()));
  h = mix(h, mpz_sizeinbase(q.get_num_mpz_t(), 2));
  return h;
}

int kind_rank(ExprKind k) { return static_cast<int>(k); }

}  // namespace

struct ExprBuilder {
  static Expr make(ExprNode n) {
    std::size_t h = mix(0x51ed27, static_cast<std::size_t>(n.kind));
    switch (n.kind) {
      case ExprKind::Const:
        h = mix(h, hash_q(n.value));
        break;
      case ExprKind::Var:
        h = mix(h, n.var);
        break;
      default:
        h = mix(h, static_cast<std::size_t>(n.exponent + 1000));
        for (const auto& a : n.args) {
          h = mix(h, a.hash());
          if (!a.is_rational()) n.rational = false;
        }
    }
    if (n.kind == ExprKind::Sqrt || n.kind == ExprKind::Ln || n.kind == ExprKind::Atan) n.rational = false;
    n.hash = h;
    return Expr(std::make_shared<const ExprNode>(std::move(n)));
  }
  static Expr constant(const mpq_class& v) {
    ExprNode n;
    n.kind = ExprKind::Const;
    n.value = v;
    return make(std::move(n));
  }
  static Expr compound(ExprKind k, std::vector<Expr> args, int exponent = 0) {
    ExprNode n;
    n.kind = k;
    n.args = std::move(args);
    n.exponent = exponent;
    return make(std::move(n));
  }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = ExprBuilder::constant(0);
  return z;
}

const Expr& one_expr() {
  static const Expr o = ExprBuilder::constant(1);
  return o;
}

int compare(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  if (a.kind() != b.kind()) return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Const:
      return cmp(a.value(), b.value()) < 0 ? -1 : (a.value() == b.value() ? 0 : 1);
    case ExprKind::Var:
      return a.var() < b.var() ? -1 : (a.var() == b.var() ? 0 : 1);
    default:
      break;
  }
  if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
  if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
  const auto& x = a.args();
  const auto& y = b.args();
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    int c = compare(x[i], y[i]);
    if (c) return c;
  }
  return 0;
}

bool expr_less(const Expr& a, const Expr& b) { return compare(a, b) < 0; }

// Bucketed list of (key, payload) with structural key equality.
template <class Payload>
class Collector {
 public:
  Payload& at(const Expr& key, const Payload& init) {
    auto& bucket = index_[key.hash()];
    for (std::size_t pos : bucket)
      if (items_[pos].first.same(key)) return items_[pos].second;
    bucket.push_back(items_.size());
    items_.emplace_back(key, init);
    return items_.back().second;
  }
  std::vector<std::pair<Expr, Payload>>& items() { return items_; }

 private:
  std::vector<std::pair<Expr, Payload>> items_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
};

Expr product_rest(const Expr& m) {
  // m is a simplified Mul whose first argument is a constant.
  std::vector<Expr> rest(m.args().begin() + 1, m.args().end());
  if (rest.size() == 1) return rest[0];
  return ExprBuilder::compound(ExprKind::Mul, std::move(rest));
}

Expr scale_term(const mpq_class& c, const Expr& rest) {
  if (c == 1) return rest;
  std::vector<Expr> args{ExprBuilder::constant(c)};
  if (rest.kind() == ExprKind::Mul)
    args.insert(args.end(), rest.args().begin(), rest.args().end());
  else
    args.push_back(rest);
  return ExprBuilder::compound(ExprKind::Mul, std::move(args));
}

}  // namespace

// ---- Expr basics ----

Expr::Expr() : node_(zero_expr().node_) {}
Expr::Expr(long v) : node_(v == 0 ? zero_expr().node_ : (v == 1 ? one_expr().node_ : ExprBuilder::constant(v).node_)) {}
// Callers may pass an uncanonicalized quotient; constants are compared by value.
Expr::Expr(const mpq_class& v) : node_(ExprBuilder::constant([&] {
                                   mpq_class c = v;
                                   c.canonicalize();
                                   return c;
                                 }()).node_) {}

Expr Expr::variable(VarId v) {
  ExprNode n;
  n.kind = ExprKind::Var;
  n.var = v;
  return ExprBuilder::make(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
const mpq_class& Expr::value() const { return node_->value; }
VarId Expr::var() const { return node_->var; }
int Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
bool Expr::is_rational() const { return node_->rational; }
bool Expr::is_zero() const { return kind() == ExprKind::Const && sgn(value()) == 0; }
bool Expr::is_one() const { return kind() == ExprKind::Const && value() == 1; }
bool Expr::same(const Expr& o) const { return node_ == o.node_ || (hash() == o.hash() && compare(*this, o) == 0); }

// ---- simplifying constructors ----

Expr add(std::vector<Expr> terms) {
  mpq_class constant = 0;
  Collector<mpq_class> acc;
  std::function<void(const Expr&)> push = [&](const Expr& t) {
    switch (t.kind()) {
      case ExprKind::Const:
        constant += t.value();
        return;
      case ExprKind::Add:
        for (const auto& a : t.args()) push(a);
        return;
      case ExprKind::Mul:
        if (t.args().front().is_const()) {
          acc.at(product_rest(t), mpq_class(0)) += t.args().front().value();
          return;
        }
        break;
      default:
        break;
    }
    acc.at(t, mpq_class(0)) += 1;
  };
  for (const auto& t : terms) push(t);

  std::vector<Expr> out;
  if (sgn(constant) != 0) out.push_back(ExprBuilder::constant(constant));
  for (auto& [rest, c] : acc.items())
    if (sgn(c) != 0) out.push_back(scale_term(c, rest));
  if (out.empty()) return Expr();
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), expr_less);
  return ExprBuilder::compound(ExprKind::Add, std::move(out));
}

Expr mul(std::vector<Expr> factors) {
  mpq_class coef = 1;
  Collector<long> acc;
  bool zero = false;
  std::function<void(const Expr&, long)> push = [&](const Expr& f, long e) {
    switch (f.kind()) {
      case ExprKind::Const:
        if (sgn(f.value()) == 0) {
          if (e < 0) throw DivisionByZero("division by zero");
          zero = true;
          return;
        }
        coef *= pow(f, static_cast<int>(e)).value();
        return;
      case ExprKind::Mul:
        for (const auto& a : f.args()) push(a, e);
        return;
      case ExprKind::Pow:
        acc.at(f.args()[0], 0) += e * f.exponent();
        return;
      default:
        acc.at(f, 0) += e;
    }
  };
  for (const auto& f : factors) push(f, 1);
  if (zero) return Expr();

  std::vector<Expr> out;
  bool resimplify = false;
  for (auto& [base, e] : acc.items()) {
    if (e == 0) continue;
    Expr p = e == 1 ? base : pow(base, static_cast<int>(e));
    if (p.kind() == ExprKind::Const || p.kind() == ExprKind::Mul ||
        (p.kind() == ExprKind::Pow && !p.args()[0].same(base)))
      resimplify = true;
    out.push_back(p);
  }
  if (resimplify) {
    out.push_back(ExprBuilder::constant(coef));
    return mul(std::move(out));
  }
  std::sort(out.begin(), out.end(), expr_less);
  if (out.empty()) return ExprBuilder::constant(coef);
  if (coef == 1 && out.size() == 1) return out[0];
  if (coef != 1) out.insert(out.begin(), ExprBuilder::constant(coef));
  return ExprBuilder::compound(ExprKind::Mul, std::move(out));
}

Expr pow(const Expr& base, int e) {
  if (e == 0) return Expr(1);
  if (e == 1) return base;
  switch (base.kind()) {
    case ExprKind::Const: {
      const mpq_class& v = base.value();
      if (sgn(v) == 0) {
        if (e < 0) throw DivisionByZero("division by zero");
        return Expr();
      }
      mpz_class num, den;
      unsigned ae = static_cast<unsigned>(e < 0 ? -e : e);
      mpz_pow_ui(num.get_mpz_t(), v.get_num_mpz_t(), ae);
      mpz_pow_ui(den.get_mpz_t(), v.get_den_mpz_t(), ae);
      mpq_class r = e < 0 ? mpq_class(den, num) : mpq_class(num, den);
      r.canonicalize();
      return Expr(r);
    }
    case ExprKind::Pow:
      return pow(base.args()[0], base.exponent() * e);
    case ExprKind::Mul: {
      std::vector<Expr> f;
      for (const auto& a : base.args()) f.push_back(pow(a, e));
      return mul(std::move(f));
    }
    case ExprKind::Sqrt:
      if (e % 2 == 0) return pow(base.args()[0], e / 2);
      break;
    default:
      break;
  }
  return ExprBuilder::compound(ExprKind::Pow, {base}, e);
}

namespace {

bool perfect_square(const mpz_class& z, mpz_class& root) {
  if (sgn(z) < 0) return false;
  if (!mpz_perfect_square_p(z.get_mpz_t())) return false;
  mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
  return true;
}

}  // namespace

Expr sqrt(const Expr& a) {
  if (a.is_const()) {
    mpz_class rn, rd;
    if (perfect_square(a.value().get_num(), rn) && perfect_square(a.value().get_den(), rd)) {
      mpq_class r(rn, rd);
      r.canonicalize();
      return Expr(r);
    }
  }
  return ExprBuilder::compound(ExprKind::Sqrt, {a});
}

Expr ln(const Expr& a) {
  if (a.is_one()) return Expr();
  return ExprBuilder::compound(ExprKind::Ln, {a});
}

Expr atan(const Expr& a) {
  if (a.is_zero()) return Expr();
  return ExprBuilder::compound(ExprKind::Atan, {a});
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return add({a, b});
}
Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  return add({a, mul({Expr(-1), b})});
}
Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return mul({a, b});
}
Expr operator/(const Expr& a, const Expr& b) { return mul({a, pow(b, -1)}); }
Expr Expr::operator-() const { return mul({Expr(-1), *this}); }

// ---- printing ----

namespace {

enum Prec { kSum = 0, kProduct = 1, kPowerBase = 2 };

bool negative_term(const Expr& e) {
  if (e.is_const()) return sgn(e.value()) < 0;
  return e.kind() == ExprKind::Mul && e.args().front().is_const() && sgn(e.args().front().value()) < 0;
}

void print(const Expr& e, int prec, std::ostream& os);

void print_product(const Expr& e, int prec, std::ostream& os) {
  mpq_class coef = 1;
  std::vector<Expr> num, den;
  auto classify = [&](const Expr& f) {
    if (f.is_const())
      coef *= f.value();
    else if (f.kind() == ExprKind::Pow && f.exponent() < 0)
      den.push_back(pow(f.args()[0], -f.exponent()));
    else
      num.push_back(f);
  };
  if (e.kind() == ExprKind::Mul)
    for (const auto& f : e.args()) classify(f);
  else
    classify(e);
  bool neg = sgn(coef) < 0;
  coef = abs(coef);
  bool wrap = prec >= kPowerBase || (neg && prec > kSum);
  if (wrap) os << "(";
  if (neg) os << "-";
  bool first = true;
  if (coef.get_num() != 1 || num.empty()) {
    os << coef.get_num().get_str();
    first = false;
  }
  for (const auto& f : num) {
    if (!first) os << "*";
    print(f, kPowerBase, os);
    first = false;
  }
  if (coef.get_den() != 1) den.insert(den.begin(), Expr(mpq_class(coef.get_den())));
  if (!den.empty()) {
    os << "/";
    if (den.size() > 1) os << "(";
    for (std::size_t i = 0; i < den.size(); ++i) {
      if (i) os << "*";
      print(den[i], kPowerBase, os);
    }
    if (den.size() > 1) os << ")";
  }
  if (wrap) os << ")";
}

void print(const Expr& e, int prec, std::ostream& os) {
  switch (e.kind()) {
    case ExprKind::Const: {
      const mpq_class& v = e.value();
      bool wrap = (sgn(v) < 0 && prec > kSum) || (v.get_den() != 1 && prec > kSum);
      if (wrap) os << "(";
      os << v.get_str();
      if (wrap) os << ")";
      return;
    }
    case ExprKind::Var:
      os << symbol_name(e.var());
      return;
    case ExprKind::Add: {
      if (prec > kSum) os << "(";
      bool first = true;
      for (const auto& t : e.args()) {
        if (first) {
          print(t, kSum, os);
        } else if (negative_term(t)) {
          os << " - ";
          print(-t, kProduct, os);
        } else {
          os << " + ";
          print(t, kProduct, os);
        }
        first = false;
      }
      if (prec > kSum) os << ")";
      return;
    }
    case ExprKind::Mul:
      print_product(e, prec, os);
      return;
    case ExprKind::Pow:
      if (e.exponent() < 0) {
        print_product(e, prec, os);
        return;
      }
      print(e.args()[0], kPowerBase + 1, os);
      os << "^" << e.exponent();
      return;
    case ExprKind::Sqrt:
    case ExprKind::Ln:
    case ExprKind::Atan:
      os << (e.kind() == ExprKind::Sqrt ? "sqrt(" : e.kind() == ExprKind::Ln ? "ln(" : "atan(");
      print(e.args()[0], kSum, os);
      os << ")";
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(e, kSum, os);
  return os.str();
}

// ---- calculus ----

Expr Differentiator::operator()(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const:
      return Expr();
    case ExprKind::Var:
      return e.var() == v_ ? Expr(1) : Expr();
    default:
      break;
  }
  auto it = memo_.find(e.node());
  if (it != memo_.end()) return it->second.second;
  Expr out;
  const auto& a = e.args();
  switch (e.kind()) {
    case ExprKind::Add: {
      std::vector<Expr> terms;
      for (const auto& t : a) terms.push_back((*this)(t));
      out = add(std::move(terms));
      break;
    }
    case ExprKind::Mul: {
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Expr di = (*this)(a[i]);
        if (di.is_zero()) continue;
        std::vector<Expr> f = a;
        f[i] = di;
        terms.push_back(mul(std::move(f)));
      }
      out = add(std::move(terms));
      break;
    }
    case ExprKind::Pow: {
      Expr db = (*this)(a[0]);
      out = db.is_zero() ? Expr() : mul({Expr(static_cast<long>(e.exponent())), pow(a[0], e.exponent() - 1), db});
      break;
    }
    case ExprKind::Sqrt: {
      Expr du = (*this)(a[0]);
      out = du.is_zero() ? Expr() : mul({Expr(mpq_class(1, 2)), du, pow(e, -1)});
      break;
    }
    case ExprKind::Ln: {
      Expr du = (*this)(a[0]);
      out = du.is_zero() ? Expr() : mul({du, pow(a[0], -1)});
      break;
    }
    case ExprKind::Atan: {
      Expr du = (*this)(a[0]);
      out = du.is_zero() ? Expr() : mul({du, pow(add({Expr(1), pow(a[0], 2)}), -1)});
      break;
    }
    default:
      break;
  }
  memo_.emplace(e.node(), std::make_pair(e, out));
  return out;
}

Expr differentiate(const Expr& e, VarId v) {
  Differentiator d(v);
  return d(e);
}

Expr derive_multi(const Expr& e, const std::vector<VarId>& vars, const std::vector<unsigned>& exponents) {
  if (vars.size() != exponents.size()) throw InvalidArgument("derive_multi: size mismatch");
  Expr out = e;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    Differentiator d(vars[j]);
    for (unsigned k = 0; k < exponents[j]; ++k) out = d(out);
  }
  return out;
}

Expr substitute(const Expr& e, const std::map<VarId, Expr>& bindings) {
  std::unordered_map<const ExprNode*, Expr> memo;
  std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
    switch (x.kind()) {
      case ExprKind::Const:
        return x;
      case ExprKind::Var: {
        auto it = bindings.find(x.var());
        return it == bindings.end() ? x : it->second;
      }
      default:
        break;
    }
    auto it = memo.find(x.node());
    if (it != memo.end()) return it->second;
    std::vector<Expr> a;
    for (const auto& c : x.args()) a.push_back(go(c));
    Expr out;
    switch (x.kind()) {
      case ExprKind::Add:
        out = add(std::move(a));
        break;
      case ExprKind::Mul:
        out = mul(std::move(a));
        break;
      case ExprKind::Pow:
        out = pow(a[0], x.exponent());
        break;
      case ExprKind::Sqrt:
        out = sqrt(a[0]);
        break;
      case ExprKind::Ln:
        out = ln(a[0]);
        break;
      case ExprKind::Atan:
        out = atan(a[0]);
        break;
      default:
        break;
    }
    memo.emplace(x.node(), out);
    return out;
  };
  return go(e);
}

// ---- evaluation ----

mpq_class ExactEvaluator::operator()(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const:
      return e.value();
    case ExprKind::Var: {
      auto it = pt_.find(e.var());
      if (it == pt_.end()) throw InvalidArgument("unbound variable '" + symbol_name(e.var()) + "'");
      return it->second;
    }
    case ExprKind::Sqrt:
    case ExprKind::Ln:
    case ExprKind::Atan:
      throw ExactUnsupported("exact evaluation of " + to_string(e));
    default:
      break;
  }
  auto it = memo_.find(e.node());
  if (it != memo_.end()) return it->second;
  mpq_class out;
  const auto& a = e.args();
  if (e.kind() == ExprKind::Add) {
    out = 0;
    for (const auto& t : a) out += (*this)(t);
  } else if (e.kind() == ExprKind::Mul) {
    out = 1;
    for (const auto& t : a) {
      out *= (*this)(t);
      if (sgn(out) == 0) break;
    }
  } else {
    mpq_class b = (*this)(a[0]);
    int ex = e.exponent();
    if (sgn(b) == 0 && ex < 0) throw DivisionByZero("vanishing subexpression " + to_string(a[0]));
    unsigned ae = static_cast<unsigned>(ex < 0 ? -ex : ex);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), ae);
    mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), ae);
    out = ex < 0 ? mpq_class(den, num) : mpq_class(num, den);
    out.canonicalize();
  }
  memo_.emplace(e.node(), out);
  return out;
}

FloatEvaluator::FloatEvaluator(const Point& pt) {
  for (const auto& [v, q] : pt) pt_.emplace(v, to_bigfloat(q));
}

BigFloat FloatEvaluator::operator()(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const:
      return to_bigfloat(e.value());
    case ExprKind::Var: {
      auto it = pt_.find(e.var());
      if (it == pt_.end()) throw InvalidArgument("unbound variable '" + symbol_name(e.var()) + "'");
      return it->second;
    }
    default:
      break;
  }
  auto it = memo_.find(e.node());
  if (it != memo_.end()) return it->second;
  BigFloat out;
  const auto& a = e.args();
  switch (e.kind()) {
    case ExprKind::Add:
      out = 0;
      for (const auto& t : a) out += (*this)(t);
      break;
    case ExprKind::Mul:
      out = 1;
      for (const auto& t : a) out *= (*this)(t);
      break;
    case ExprKind::Pow: {
      BigFloat b = (*this)(a[0]);
      if (b == 0 && e.exponent() < 0) throw DivisionByZero("vanishing subexpression " + to_string(a[0]));
      out = pow(b, e.exponent());
      break;
    }
    case ExprKind::Sqrt: {
      BigFloat b = (*this)(a[0]);
      if (b < 0) throw DomainError("sqrt of negative value: " + to_string(a[0]));
      out = boost::multiprecision::sqrt(b);
      break;
    }
    case ExprKind::Ln: {
      BigFloat b = (*this)(a[0]);
      if (b <= 0) throw DomainError("ln of nonpositive value: " + to_string(a[0]));
      out = boost::multiprecision::log(b);
      break;
    }
    case ExprKind::Atan:
      out = boost::multiprecision::atan((*this)(a[0]));
      break;
    default:
      break;
  }
  memo_.emplace(e.node(), out);
  return out;
}

mpq_class eval_exact(const Expr& e, const Point& pt) {
  ExactEvaluator ev(pt);
  return ev(e);
}

BigFloat eval_float(const Expr& e, const Point& pt, unsigned digits) {
  PrecisionScope scope(digits);
  FloatEvaluator ev(pt);
  return ev(e);
}

// ---- conversions ----

RatFunc RatFuncConverter::operator()(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const:
      return RatFunc(e.value());
    case ExprKind::Var:
      return RatFunc::var(e.var());
    case ExprKind::Sqrt:
    case ExprKind::Ln:
    case ExprKind::Atan:
      throw ExactUnsupported("not a rational function: " + to_string(e));
    default:
      break;
  }
  auto it = memo_.find(e.node());
  if (it != memo_.end()) return it->second.second;
  RatFunc out;
  const auto& a = e.args();
  if (e.kind() == ExprKind::Add) {
    for (const auto& t : a) out += (*this)(t);
  } else if (e.kind() == ExprKind::Mul) {
    out = RatFunc(1);
    for (const auto& t : a) out *= (*this)(t);
  } else {
    out = (*this)(a[0]).pow(e.exponent());
  }
  memo_.emplace(e.node(), std::make_pair(e, out));
  return out;
}

RatFunc to_ratfunc(const Expr& e) {
  if (!e.is_rational()) throw ExactUnsupported("not a rational function: " + to_string(e));
  RatFuncConverter conv;
  return conv(e);
}

Expr to_expr(const Poly& p) {
  std::vector<Expr> terms;
  for (const auto& t : p.terms()) {
    std::vector<Expr> f{Expr(t.c)};
    const auto& ex = t.m.exponents();
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex[i]) f.push_back(pow(Expr::variable(static_cast<VarId>(i)), static_cast<int>(ex[i])));
    terms.push_back(mul(std::move(f)));
  }
  return add(std::move(terms));
}

Expr to_expr(const RatFunc& f) {
  if (f.is_polynomial()) return to_expr(f.num());
  return mul({to_expr(f.num()), pow(to_expr(f.den()), -1)});
}

std::vector<VarId> free_variables(const Expr& e) {
  std::vector<VarId> out;
  std::unordered_set<const ExprNode*> seen;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x.kind() == ExprKind::Var) {
      if (std::find(out.begin(), out.end(), x.var()) == out.end()) out.push_back(x.var());
      return;
    }
    if (!seen.insert(x.node()).second) return;
    for (const auto& c : x.args()) go(c);
  };
  go(e);
  return out;
}

std::string canonical_string(const Expr& e) {
  if (e.is_rational()) return to_ratfunc(e).to_string();
  return to_string(e);
}

}  // namespace webgeom
