#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "webgeom/bigfloat.hpp"
#include "webgeom/symbol.hpp"

namespace webgeom {

using Point = std::map<VarId, mpq_class>;

// Exponent vector indexed by VarId, trailing zeros trimmed.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(VarId v, unsigned e = 1);

  unsigned degree() const { return degree_; }
  unsigned exponent(VarId v) const { return v < e_.size() ? e_[v] : 0; }
  const std::vector<unsigned>& exponents() const { return e_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  // Requires divides(o) == true in the sense this | o; returns o / this.
  Monomial quotient_of(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;
  Monomial without(VarId v) const;

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  std::size_t hash() const;

 private:
  void trim();
  std::vector<unsigned> e_;
  unsigned degree_ = 0;
};

// Graded lexicographic order, variable 0 largest.
std::strong_ordering grlex(const Monomial& a, const Monomial& b);

struct Term {
  Monomial m;
  mpq_class c;
};

// Sparse multivariate polynomial over Q with terms in strictly decreasing grlex order.
class Poly {
 public:
  Poly() = default;
  Poly(const mpq_class& c);  // NOLINT(google-explicit-constructor)
  Poly(long c);              // NOLINT(google-explicit-constructor)
  static Poly var(VarId v);
  static Poly monomial(const Monomial& m, const mpq_class& c);
  static Poly from_terms(std::vector<Term> terms);  // any order, duplicates summed

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  mpq_class constant_value() const;  // requires is_constant()
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  unsigned total_degree() const;
  unsigned degree_in(VarId v) const;
  std::vector<VarId> variables() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpq_class& s) const;
  Poly times_monomial(const Monomial& m) const;
  Poly pow(unsigned e) const;
  bool operator==(const Poly& o) const;

  Poly derivative(VarId v) const;
  mpq_class eval(const Point& pt) const;
  BigFloat eval_float(const Point& pt) const;

  // Coefficients in v: result[k] multiplies v^k and is free of v.
  std::vector<Poly> coefficients_in(VarId v) const;
  static Poly from_coefficients(VarId v, const std::vector<Poly>& coeffs);

  // Rational c, signed like the leading coefficient, such that this / c has coprime integer
  // coefficients and a positive leading coefficient.
  mpq_class content() const;
  Poly primitive() const;
  // Leading coefficient 1.
  Poly monic() const;
  // gcd of all monomials.
  Monomial monomial_content() const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

// Quotient if b divides a exactly, otherwise empty. b must be nonzero.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

// Monic gcd over Q; gcd(0,0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace webgeom
