#include "webgeom/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "webgeom/errors.hpp"

namespace webgeom {

// ---- Monomial ----

Monomial Monomial::var(VarId v, unsigned e) {
  Monomial m;
  if (e == 0) return m;
  m.e_.assign(v + 1, 0);
  m.e_[v] = e;
  m.degree_ = e;
  return m;
}

void Monomial::trim() {
  while (!e_.empty() && e_.back() == 0) e_.pop_back();
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.e_.assign(std::max(e_.size(), o.e_.size()), 0);
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] += e_[i];
  for (std::size_t i = 0; i < o.e_.size(); ++i) m.e_[i] += o.e_[i];
  m.degree_ = degree_ + o.degree_;
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  if (degree_ > o.degree_ || e_.size() > o.e_.size()) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial m;
  m.e_ = o.e_;
  for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] -= e_[i];
  m.degree_ = o.degree_ - degree_;
  m.trim();
  return m;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial m;
  std::size_t n = std::min(e_.size(), o.e_.size());
  m.e_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    m.e_[i] = std::min(e_[i], o.e_[i]);
    m.degree_ += m.e_[i];
  }
  m.trim();
  return m;
}

Monomial Monomial::without(VarId v) const {
  Monomial m = *this;
  if (v < m.e_.size()) {
    m.degree_ -= m.e_[v];
    m.e_[v] = 0;
    m.trim();
  }
  return m;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (unsigned x : e_) h = (h ^ x) * 0x100000001b3ULL;
  return h;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  std::size_t n = std::max(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    unsigned x = i < ea.size() ? ea[i] : 0;
    unsigned y = i < eb.size() ? eb[i] : 0;
    if (x != y) return x <=> y;
  }
  return std::strong_ordering::equal;
}

namespace {

bool grlex_greater(const Term& a, const Term& b) { return grlex(a.m, b.m) == std::strong_ordering::greater; }

mpq_class pow_q(const mpq_class& x, unsigned e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e);
  return mpq_class(num, den);
}

const mpq_class& lookup(const Point& pt, VarId v) {
  auto it = pt.find(v);
  if (it == pt.end()) throw InvalidArgument("unbound variable '" + symbol_name(v) + "'");
  return it->second;
}

}  // namespace

// ---- Poly ----

Poly::Poly(const mpq_class& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Poly::Poly(long c) : Poly(mpq_class(c)) {}

Poly Poly::var(VarId v) { return monomial(Monomial::var(v), 1); }

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), grlex_greater);
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
  return p;
}

mpq_class Poly::constant_value() const {
  if (!is_constant()) throw InvalidArgument("polynomial is not constant");
  return terms_.empty() ? mpq_class(0) : terms_[0].c;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().m.degree(); }

unsigned Poly::degree_in(VarId v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.exponent(v));
  return d;
}

std::vector<VarId> Poly::variables() const {
  std::vector<bool> seen;
  for (const auto& t : terms_) {
    const auto& e = t.m.exponents();
    if (seen.size() < e.size()) seen.resize(e.size(), false);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) seen[i] = true;
  }
  std::vector<VarId> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<VarId>(i));
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

namespace {

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    if (i == a.size()) {
      out.push_back(b[j++]);
      if (subtract) out.back().c = -out.back().c;
      continue;
    }
    auto ord = grlex(a[i].m, b[j].m);
    if (ord == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (ord == std::strong_ordering::less) {
      out.push_back(b[j++]);
      if (subtract) out.back().c = -out.back().c;
    } else {
      mpq_class c = subtract ? mpq_class(a[i].c - b[j].c) : mpq_class(a[i].c + b[j].c);
      if (sgn(c) != 0) out.push_back({a[i].m, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].m).scaled(a.terms_[0].c);
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].m).scaled(b.terms_[0].c);
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) prod.push_back({x.m * y.m, x.c * y.c});
  return Poly::from_terms(std::move(prod));
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::scaled(const mpq_class& s) const {
  if (sgn(s) == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.c *= s;
  return p;
}

Poly Poly::times_monomial(const Monomial& m) const {
  Poly p = *this;
  if (m.is_one()) return p;
  for (auto& t : p.terms_) t.m = t.m * m;
  return p;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Poly Poly::derivative(VarId v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.m.exponent(v);
    if (e == 0) continue;
    Monomial m = t.m.without(v) * Monomial::var(v, e - 1);
    out.push_back({m, t.c * e});
  }
  return from_terms(std::move(out));
}

mpq_class Poly::eval(const Point& pt) const {
  mpq_class total = 0;
  for (const auto& t : terms_) {
    mpq_class v = t.c;
    const auto& e = t.m.exponents();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) v *= pow_q(lookup(pt, static_cast<VarId>(i)), e[i]);
    total += v;
  }
  return total;
}

BigFloat Poly::eval_float(const Point& pt) const {
  BigFloat total = 0;
  for (const auto& t : terms_) {
    BigFloat v = to_bigfloat(t.c);
    const auto& e = t.m.exponents();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) v *= boost::multiprecision::pow(to_bigfloat(lookup(pt, static_cast<VarId>(i))), static_cast<int>(e[i]));
    total += v;
  }
  return total;
}

std::vector<Poly> Poly::coefficients_in(VarId v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) buckets[t.m.exponent(v)].push_back({t.m.without(v), t.c});
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(VarId v, const std::vector<Poly>& coeffs) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Monomial m = Monomial::var(v, static_cast<unsigned>(k));
    for (const auto& t : coeffs[k].terms_) out.push_back({t.m * m, t.c});
  }
  return from_terms(std::move(out));
}

mpq_class Poly::content() const {
  if (terms_.empty()) return 0;
  mpz_class g = 0, l = 1;
  for (const auto& t : terms_) {
    g = gcd(g, mpz_class(abs(t.c.get_num())));
    l = lcm(l, mpz_class(t.c.get_den()));
  }
  mpq_class c(g, l);
  c.canonicalize();
  if (sgn(terms_.front().c) < 0) c = -c;
  return c;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return Poly();
  return scaled(1 / content());
}

Poly Poly::monic() const {
  if (terms_.empty()) return Poly();
  return scaled(1 / terms_.front().c);
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_.front().m;
  for (const auto& t : terms_) g = g.gcd(t.m);
  return g;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.c;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool unit = (c == 1);
    if (!unit || t.m.is_one()) os << c.get_str();
    const auto& e = t.m.exponents();
    bool need_star = !unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << symbol_name(static_cast<VarId>(i));
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

std::size_t Poly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& t : terms_) {
    h ^= t.m.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(t.c.get_str()) + (h << 6) + (h >> 2);
  }
  return h;
}

// ---- exact division and gcd ----

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.is_zero()) return Poly();
  if (b.is_constant()) return a.scaled(1 / b.constant_value());
  if (b.total_degree() > a.total_degree()) return std::nullopt;
  for (VarId v : b.variables())
    if (b.degree_in(v) > a.degree_in(v)) return std::nullopt;
  std::vector<Term> q;
  Poly r = a;
  const Term& lb = b.leading();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    if (!lb.m.divides(lr.m)) return std::nullopt;
    Term t{lb.m.quotient_of(lr.m), lr.c / lb.c};
    r -= b.times_monomial(t.m).scaled(t.c);
    q.push_back(std::move(t));
  }
  return Poly::from_terms(std::move(q));
}

namespace {

using UPoly = std::vector<Poly>;

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly content_of(const UPoly& p) {
  Poly g;
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Poly(1);
  }
  return g;
}

UPoly divide_all(const UPoly& p, const Poly& c) {
  UPoly out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(*divide_exact(x, c));
  return out;
}

// Scales p so that its coefficients are integers with gcd 1. Keeps the primitive PRS from
// accumulating rational content.
void make_integer_primitive(UPoly& p) {
  mpz_class g = 0, l = 1;
  for (const auto& c : p)
    for (const auto& t : c.terms()) {
      g = gcd(g, mpz_class(abs(t.c.get_num())));
      l = lcm(l, mpz_class(t.c.get_den()));
    }
  if (g == 0 || (g == 1 && l == 1)) return;
  mpq_class f(l, g);
  f.canonicalize();
  for (auto& c : p) c = c.scaled(f);
}

// lc(b)^(deg a - deg b + 1) a mod b, the exact pseudo-remainder.
UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const Poly& lcb = b.back();
  int steps = static_cast<int>(a.size()) - static_cast<int>(b.size()) + 1;
  while (!a.empty() && a.size() >= b.size()) {
    Poly lca = a.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = a[i] * lcb;
      if (i >= shift) a[i] -= lca * b[i - shift];
    }
    a.pop_back();
    trim(a);
    --steps;
  }
  if (steps > 0 && !a.empty()) {
    Poly f = lcb.pow(static_cast<unsigned>(steps));
    for (auto& c : a) c = c * f;
  }
  return a;
}

// Subresultant PRS in v: coefficient growth stays linear without content computations
// inside the loop; only the final remainder is made primitive.
Poly gcd_in(const Poly& a, const Poly& b, VarId v) {
  UPoly ua = a.coefficients_in(v);
  UPoly ub = b.coefficients_in(v);
  Poly ca = content_of(ua);
  Poly cb = content_of(ub);
  Poly c = gcd(ca, cb);
  ua = divide_all(ua, ca);
  ub = divide_all(ub, cb);
  make_integer_primitive(ua);
  make_integer_primitive(ub);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  Poly g(1), h(1);
  UPoly result;
  while (true) {
    const unsigned delta = static_cast<unsigned>(ua.size() - ub.size());
    UPoly r = pseudo_remainder(ua, ub);
    if (r.empty()) {
      result = std::move(ub);
      break;
    }
    if (r.size() == 1) {
      result = {Poly(1)};
      break;
    }
    r = divide_all(r, g * h.pow(delta));
    ua = std::move(ub);
    ub = std::move(r);
    g = ua.back();
    if (delta == 0) continue;
    // h <- g^delta / h^(delta-1)
    Poly num = g.pow(delta);
    h = delta == 1 ? num : *divide_exact(num, h.pow(delta - 1));
  }
  result = divide_all(result, content_of(result));
  return (c * Poly::from_coefficients(v, result)).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a.terms().size() == 1 || b.terms().size() == 1) {
    Monomial g = a.monomial_content().gcd(b.monomial_content());
    return Poly::monomial(g, 1);
  }
  if (a == b) return a.monic();
  if (auto q = divide_exact(a, b)) return b.monic();
  if (auto q = divide_exact(b, a)) return a.monic();

  std::vector<VarId> va = a.variables();
  std::vector<VarId> vb = b.variables();
  VarId v = std::min(va.front(), vb.front());
  bool in_a = std::binary_search(va.begin(), va.end(), v);
  bool in_b = std::binary_search(vb.begin(), vb.end(), v);
  if (!in_a) return gcd(a, content_of(b.coefficients_in(v)));
  if (!in_b) return gcd(content_of(a.coefficients_in(v)), b);
  return gcd_in(a, b, v);
}

}  // namespace webgeom
