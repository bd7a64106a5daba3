#pragma once

#include <cstdint>
#include <optional>

#include <gmpxx.h>

// Integer combinatorics of jet systems for d-webs of codimension q in dimension n.
// Every ratio is compared as an exact rational.
namespace webgeom::combinat {

using Int = std::int64_t;

// 0 when s < 0 or s > r.
Int binom(Int r, Int s);

// Dimension of degree-h homogeneous polynomials in r variables.
Int c(Int r, Int h);

// Dimension of closed homogeneous degree-h p-form symbols in n variables, b(n+k, n-p) c(p,k).
Int z(Int n, Int p, Int k);

// Same quantity via the alternating sum over the Koszul complex.
Int z_alternating(Int n, Int p, Int k);

// b(n,p) c(n,k) / (b(q,p) c(q,k)).
mpq_class plain_ratio(Int n, Int q, Int p, Int k);

// z(n,p,k) / z(q,p,k).
mpq_class closed_ratio(Int n, Int q, Int p, Int k);

// Largest k with plain_ratio <= d; empty when d is below the k = 0 ratio.
std::optional<Int> k_zero(Int n, Int d, Int q, Int p);

// Largest k with closed_ratio <= d; empty when d is below the k = 0 ratio.
std::optional<Int> k_one(Int n, Int d, Int q, Int p);

// Requires q | n, throws InvalidArgument otherwise.
Int pi_henaut(Int n, Int d, Int q, Int p);

Int pi_zero(Int n, Int d, Int q, Int p);
Int pi_prime(Int n, Int d, Int q, Int p);

struct Sizes {
  Int alpha;
  Int beta;
  Int alpha_tilde;
  Int beta_tilde;
};

// Cumulative column / row counts of M_k and its closed counterpart.
Sizes sizes(Int n, Int d, Int q, Int p, Int k);

bool is_calibrated(Int n, Int d, Int q, Int p);
bool is_strongly_calibrated(Int n, Int d, Int q, Int p);

// Necessary condition for p-ordinarity: alpha~ - beta~ <= alpha - beta for all k <= min(k0, k1).
// Vacuously true when either threshold is absent.
bool excess_condition(Int n, Int d, Int q, Int p);

struct BoundProfile {
  Int n = 0, q = 0, d = 0, p = 0;
  std::optional<Int> k0;
  std::optional<Int> k1;
  Int pi0 = 0;
  Int pi_prime = 0;
  std::optional<Int> pi_henaut;
  bool calibrated = false;
  bool strongly_calibrated = false;
  bool excess_ok = false;
};

// Throws InvalidArgument unless n >= 2, 1 <= q <= n-1, d >= 1, 1 <= p <= q.
void check_parameters(Int n, Int d, Int q, Int p);

BoundProfile bound_profile(Int n, Int d, Int q, Int p);

// Alternative closed forms, kept for comparison against the general sums.

// Curve webs, top degree: sum_{h=0}^{d-n-1} b(n-2+h,h)(d-n-h).
Int pi_prime_curves_top(Int n, Int d);

// Curve webs (q = n-1), general p, double-binomial form of pi_prime.
Int pi_prime_curves(Int n, Int d, Int p);

// Curve webs (q = n-1), general p, single-sum form of pi_zero.
Int pi_zero_curves(Int n, Int d, Int p);

// Codimension one: sum_{h>=1} (d - c(n,h))^+.
Int pi_prime_codim_one(Int n, Int d);

// delta(delta+1)(delta-rho)/4 with 4d-2 = 3 delta + rho, 0 <= rho <= 2. Known to disagree with
// pi_zero(3,d,2,1) away from d = 3; exposed only for comparison.
mpq_class pi_zero_curves_dim3_closed_form(Int d);

}  // namespace webgeom::combinat
