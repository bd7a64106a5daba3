#pragma once

#include <string>

#include "webgeom/poly.hpp"

namespace webgeom {

// Canonical quotient num/den over Q: gcd(num, den) = 1 and den has leading coefficient 1.
// Two rational functions are equal iff their representations are identical.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const mpq_class& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : num_(c), den_(1) {}              // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& p) : num_(p), den_(1) {}       // NOLINT(google-explicit-constructor)
  // Throws DivisionByZero when den is zero.
  RatFunc(const Poly& num, const Poly& den);
  static RatFunc var(VarId v) { return RatFunc(Poly::var(v)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  RatFunc inverse() const;
  RatFunc pow(int e) const;
  RatFunc derivative(VarId v) const;

  // Throws DivisionByZero if the denominator vanishes at pt.
  mpq_class eval(const Point& pt) const;
  BigFloat eval_float(const Point& pt) const;

  // Integer form N/D: integer coefficients, positive leading coefficient of D, contents of N and
  // D coprime. Printed as "N" when D = 1, otherwise "(N)/(D)".
  std::string to_string() const;
  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  struct Raw {};
  RatFunc(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

inline RatFunc differentiate(const RatFunc& f, VarId v) { return f.derivative(v); }

}  // namespace webgeom
