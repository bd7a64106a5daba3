#include <doctest.h>

#include <algorithm>
#include <functional>
#include <vector>

#include "webgeom/combinat.hpp"
#include "webgeom/errors.hpp"

using namespace webgeom::combinat;

namespace {

// Pascal's triangle, independent of the multiplicative formula in the library.
Int pascal(Int r, Int s) {
  if (s < 0 || s > r) return 0;
  std::vector<std::vector<Int>> t(r + 1);
  for (Int i = 0; i <= r; ++i) {
    t[i].assign(i + 1, 1);
    for (Int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return t[r][s];
}

Int monomials(Int r, Int h) { return pascal(r - 1 + h, h); }

// Closed p-forms of degree k are exact (acyclic complex), so the kernel dimension telescopes
// down the Koszul resolution: sum_{j=1}^{p} (-1)^{j-1} b(n,p-j) c(n,k+j).
Int closed_dim(Int n, Int p, Int k) {
  Int total = 0;
  for (Int j = 1; j <= p; ++j) total += ((j % 2) ? 1 : -1) * pascal(n, p - j) * monomials(n, k + j);
  return total;
}

// sum_{h=0}^{60} weight(h) (d - num(h)/den(h))^+ without early termination; exact as a fraction.
template <class W, class N, class D>
mpq_class brute_clamped(Int d, W weight, N num, D den) {
  mpq_class total = 0;
  for (Int h = 0; h <= 60; ++h) {
    mpq_class gap = mpq_class(d) - mpq_class(num(h), den(h));
    if (gap > 0) total += weight(h) * gap;
  }
  return total;
}

mpq_class brute_pi_zero(Int n, Int d, Int q, Int p) {
  return brute_clamped(
      d, [&](Int h) { return mpq_class(pascal(q, p) * monomials(q, h)); },
      [&](Int h) { return pascal(n, p) * monomials(n, h); }, [&](Int h) { return pascal(q, p) * monomials(q, h); });
}

mpq_class brute_pi_prime(Int n, Int d, Int q, Int p) {
  return brute_clamped(
      d, [&](Int h) { return mpq_class(closed_dim(q, p, h)); }, [&](Int h) { return closed_dim(n, p, h); },
      [&](Int h) { return closed_dim(q, p, h); });
}

std::optional<Int> brute_threshold(Int d, const std::function<Int(Int)>& num, const std::function<Int(Int)>& den) {
  std::optional<Int> last;
  for (Int k = 0; k <= 60; ++k)
    if (num(k) <= d * den(k)) last = k;
  return last;
}

}  // namespace

TEST_CASE("binomials and monomial counts") {
  CHECK(binom(4, 2) == 6);
  CHECK(binom(5, 3) == 10);
  for (Int n = 0; n <= 9; ++n) CHECK(binom(n, 0) == 1);
  CHECK(binom(3, 5) == 0);
  CHECK(binom(3, -1) == 0);
  CHECK(c(3, 2) == 6);
  for (Int r = 1; r <= 6; ++r) CHECK(c(r, 0) == 1);
  for (Int k = 0; k <= 10; ++k) CHECK(c(2, k) == k + 1);
  for (Int r = 0; r <= 20; ++r)
    for (Int s = 0; s <= r; ++s) CHECK(binom(r, s) == pascal(r, s));
}

TEST_CASE("closed symbol dimension z") {
  CHECK(z(3, 2, 1) == 8);
  CHECK(z(4, 1, 1) == 10);
  for (Int n = 1; n <= 6; ++n)
    for (Int p = 1; p <= n; ++p) CHECK(z(n, p, 0) == binom(n, p));
  for (Int n = 2; n <= 8; ++n)
    for (Int p = 1; p <= n; ++p)
      for (Int k = 0; k <= 8; ++k) {
        CHECK(z(n, p, k) == z_alternating(n, p, k));
        CHECK(z(n, p, k) == closed_dim(n, p, k));
      }
}

TEST_CASE("thresholds k0 and k1") {
  CHECK(k_zero(3, 3, 2, 1) == 2);
  CHECK(k_zero(4, 4, 2, 1) == 1);
  // 3 (k+2)/2 takes the values 3, 9/2, ...: only k = 0 stays <= 4.
  CHECK(k_zero(3, 4, 2, 2) == 0);
  CHECK(k_one(3, 4, 2, 2) == 1);
  CHECK(k_one(4, 4, 2, 1) == 1);
  // (3+h)/2 hits 3 exactly at h = 3.
  CHECK(k_one(3, 3, 2, 1) == 3);
  CHECK_FALSE(k_zero(3, 1, 2, 1).has_value());
  CHECK_FALSE(k_one(4, 1, 2, 1).has_value());

  for (Int n = 2; n <= 6; ++n)
    for (Int q = 1; q < n; ++q)
      for (Int p = 1; p <= q; ++p)
        for (Int d = 1; d <= 12; ++d) {
          auto plain = brute_threshold(
              d, [&](Int k) { return pascal(n, p) * monomials(n, k); }, [&](Int k) { return pascal(q, p) * monomials(q, k); });
          auto closed = brute_threshold(
              d, [&](Int k) { return closed_dim(n, p, k); }, [&](Int k) { return closed_dim(q, p, k); });
          CHECK(k_zero(n, d, q, p) == plain);
          CHECK(k_one(n, d, q, p) == closed);
        }
}

TEST_CASE("ratios strictly increase in k") {
  for (Int n = 2; n <= 6; ++n)
    for (Int q = 1; q < n; ++q)
      for (Int p = 1; p <= q; ++p)
        for (Int k = 0; k < 12; ++k) {
          CHECK(plain_ratio(n, q, p, k) < plain_ratio(n, q, p, k + 1));
          CHECK(closed_ratio(n, q, p, k) < closed_ratio(n, q, p, k + 1));
        }
}

TEST_CASE("rank bounds: published and brute-force values") {
  CHECK(pi_zero(3, 3, 2, 1) == 6);
  CHECK(pi_prime(3, 3, 2, 1) == 8);
  CHECK(pi_zero(4, 4, 2, 1) == 4);
  CHECK(pi_prime(3, 4, 2, 2) == 1);
  CHECK(pi_henaut(4, 4, 2, 2) == 1);
  CHECK(pi_henaut(4, 1, 2, 1) == 0);
  CHECK_THROWS_AS(pi_henaut(3, 4, 2, 1), webgeom::InvalidArgument);
  for (Int d = 1; d <= 10; ++d) CHECK(pi_henaut(2, d, 1, 1) == (d - 1) * (d - 2) / 2);
  for (Int n = 2; n <= 5; ++n)
    for (Int q = 1; q < n; ++q)
      for (Int p = 1; p <= q; ++p) {
        CHECK(pi_zero(n, 1, q, p) == 0);
        CHECK(pi_prime(n, 1, q, p) == 0);
        for (Int d = 1; d <= 10; ++d) {
          CHECK(mpq_class(pi_zero(n, d, q, p)) == brute_pi_zero(n, d, q, p));
          CHECK(mpq_class(pi_prime(n, d, q, p)) == brute_pi_prime(n, d, q, p));
        }
      }
}

TEST_CASE("closed forms in dimension 3 and for curve webs") {
  for (Int d = 2; d <= 12; ++d) {
    CHECK(pi_prime(3, d, 2, 2) * 6 == (d - 1) * (d - 2) * (d - 3));
    CHECK(pi_prime(3, d, 2, 1) * 3 == (d * d - 1) * (2 * d - 3));
  }
  for (Int n = 3; n <= 6; ++n)
    for (Int d = 1; d <= 12; ++d) {
      Int top = 0;
      for (Int h = 0; h <= d - n - 1; ++h) top += pascal(n - 2 + h, h) * (d - n - h);
      CHECK(pi_prime(n, d, n - 1, n - 1) == top);
      CHECK(pi_prime_curves_top(n, d) == top);
    }
  for (Int n = 3; n <= 5; ++n)
    for (Int d = 1; d <= 10; ++d)
      for (Int p = 1; p <= n - 1; ++p) {
        CHECK(pi_prime(n, d, n - 1, p) == pi_prime_curves(n, d, p));
        CHECK(pi_zero(n, d, n - 1, p) == pi_zero_curves(n, d, p));
      }
  for (Int n = 2; n <= 5; ++n)
    for (Int d = 1; d <= 20; ++d) {
      Int total = 0;
      for (Int h = 1; h <= 40; ++h) total += std::max<Int>(0, d - monomials(n, h));
      CHECK(pi_prime(n, d, 1, 1) == total);
      CHECK(pi_prime_codim_one(n, d) == total);
    }
}

TEST_CASE("dimension-3 closed form for pi_zero agrees only at d = 3") {
  CHECK(pi_zero_curves_dim3_closed_form(3) == 6);
  CHECK(pi_zero(3, 3, 2, 1) == 6);
  CHECK(pi_zero_curves_dim3_closed_form(2) == 3);
  CHECK(pi_zero(3, 2, 2, 1) == 1);
  CHECK(pi_zero_curves_dim3_closed_form(4) == 10);
  CHECK(pi_zero(3, 4, 2, 1) == 20);
}

TEST_CASE("pi_zero never exceeds the Henaut bound") {
  const std::pair<Int, Int> shapes[] = {{4, 2}, {6, 3}, {4, 1}};
  for (auto [n, q] : shapes)
    for (Int p = 1; p <= q; ++p)
      for (Int d = 1; d <= 10; ++d) {
        Int h = pi_henaut(n, d, q, p);
        Int z0 = pi_zero(n, d, q, p);
        CHECK(z0 <= h);
      }
}

TEST_CASE("jet system sizes") {
  Sizes s = sizes(4, 4, 2, 1, 1);
  CHECK(s.alpha == 24);
  CHECK(s.beta == 20);
  s = sizes(3, 4, 2, 2, 0);
  CHECK(s.alpha == 4);
  CHECK(s.beta == 3);
  for (Int n = 2; n <= 5; ++n)
    for (Int q = 1; q < n; ++q)
      for (Int p = 1; p <= q; ++p)
        for (Int d = 1; d <= 5; ++d) {
          Sizes t = sizes(n, d, q, p, 0);
          CHECK(t.alpha == d * binom(q, p));
          CHECK(t.beta == binom(n, p));
          CHECK(t.alpha_tilde == d * z(q, p, 0));
        }
}

TEST_CASE("calibration and the excess condition") {
  CHECK(is_calibrated(4, 4, 2, 1));
  CHECK(is_strongly_calibrated(3, 4, 2, 2));
  CHECK(is_calibrated(3, 3, 2, 1));
  CHECK_FALSE(is_calibrated(3, 5, 2, 1));
  CHECK_FALSE(excess_condition(3, 3, 2, 1));
  CHECK(excess_condition(3, 4, 2, 2));
  // Planar webs: alpha~ - beta~ exceeds alpha - beta by sum_{h<=k} h, so the condition holds iff
  // min(k0, k1) = floor(d/2) - 1 is 0 or absent.
  for (Int d = 1; d <= 10; ++d) CHECK(excess_condition(2, d, 1, 1) == (d < 4));
}

TEST_CASE("bound profile") {
  BoundProfile b = bound_profile(3, 3, 2, 1);
  CHECK(b.pi0 == 6);
  CHECK(b.pi_prime == 8);
  CHECK_FALSE(b.excess_ok);
  CHECK_FALSE(b.pi_henaut.has_value());
  b = bound_profile(4, 4, 2, 2);
  CHECK(b.pi_henaut == 1);
  b = bound_profile(3, 1, 2, 1);
  CHECK(b.pi0 == 0);
  CHECK(b.pi_prime == 0);
  CHECK_THROWS_AS(bound_profile(3, 3, 3, 1), webgeom::InvalidArgument);
  CHECK_THROWS_AS(bound_profile(3, 3, 2, 3), webgeom::InvalidArgument);
  CHECK_THROWS_AS(bound_profile(3, 0, 2, 1), webgeom::InvalidArgument);
}
