#include "webgeom/ratfunc.hpp"

#include "webgeom/errors.hpp"

namespace webgeom {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (den.is_constant()) {
    num_ = num.scaled(1 / den.constant_value());
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num, den);
  Poly n = g.is_constant() ? num : *divide_exact(num, g);
  Poly d = g.is_constant() ? den : *divide_exact(den, g);
  mpq_class lc = d.leading().c;
  num_ = n.scaled(1 / lc);
  den_ = d.scaled(1 / lc);
}

RatFunc RatFunc::operator-() const { return RatFunc(Raw{}, -num_, den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  if (b.is_polynomial()) return RatFunc(RatFunc::Raw{}, a.num_ + b.num_ * a.den_, a.den_);
  if (a.is_polynomial()) return RatFunc(RatFunc::Raw{}, b.num_ + a.num_ * b.den_, b.den_);
  Poly g = gcd(a.den_, b.den_);
  Poly ad = *divide_exact(a.den_, g);
  Poly bd = *divide_exact(b.den_, g);
  Poly num = a.num_ * bd + b.num_ * ad;
  if (num.is_zero()) return RatFunc();
  Poly den = a.den_ * bd;
  if (g.is_constant()) return RatFunc(RatFunc::Raw{}, num, den);
  return RatFunc(num, den);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_constant()) return RatFunc(RatFunc::Raw{}, b.num_.scaled(a.num_.constant_value()), b.den_);
  if (b.is_constant()) return RatFunc(RatFunc::Raw{}, a.num_.scaled(b.num_.constant_value()), a.den_);
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  Poly n1 = *divide_exact(a.num_, g1), d2 = *divide_exact(b.den_, g1);
  Poly n2 = *divide_exact(b.num_, g2), d1 = *divide_exact(a.den_, g2);
  Poly den = d1 * d2;
  Poly num = n1 * n2;
  mpq_class lc = den.leading().c;
  return RatFunc(RatFunc::Raw{}, num.scaled(1 / lc), den.scaled(1 / lc));
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero rational function");
  mpq_class lc = num_.leading().c;
  return RatFunc(Raw{}, den_.scaled(1 / lc), num_.scaled(1 / lc));
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(Raw{}, num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

RatFunc RatFunc::derivative(VarId v) const {
  if (is_polynomial()) return RatFunc(Raw{}, num_.derivative(v), den_);
  Poly dn = num_.derivative(v);
  Poly dd = den_.derivative(v);
  if (dd.is_zero()) return RatFunc(Raw{}, dn, den_);
  // (n/d)' = (n' d - n d') / d^2; the result is reduced against d only.
  Poly top = dn * den_ - num_ * dd;
  return RatFunc(top, den_ * den_);
}

mpq_class RatFunc::eval(const Point& pt) const {
  mpq_class d = den_.eval(pt);
  if (sgn(d) == 0) throw DivisionByZero("denominator " + den_.to_string() + " vanishes");
  return num_.eval(pt) / d;
}

BigFloat RatFunc::eval_float(const Point& pt) const {
  BigFloat d = den_.eval_float(pt);
  if (d == 0) throw DivisionByZero("denominator " + den_.to_string() + " vanishes");
  return num_.eval_float(pt) / d;
}

std::string RatFunc::to_string() const {
  if (den_.is_constant()) {
    mpq_class c = num_.is_zero() ? mpq_class(1) : num_.content();
    if (c.get_den() == 1) return num_.to_string();
    Poly n = num_.scaled(mpq_class(c.get_den()));
    return "(" + n.to_string() + ")/" + c.get_den().get_str();
  }
  mpq_class cd = den_.content();  // den is monic, so cd > 0
  mpq_class cn = num_.content();
  mpq_class ratio = cn / cd;      // num/den = ratio * N/D with N, D primitive
  Poly n = num_.primitive().scaled(mpq_class(ratio.get_num()));
  Poly d = den_.primitive().scaled(mpq_class(ratio.get_den()));
  return "(" + n.to_string() + ")/(" + d.to_string() + ")";
}

}  // namespace webgeom
