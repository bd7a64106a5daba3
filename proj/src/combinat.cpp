#include "webgeom/combinat.hpp"

#include <cassert>
#include <stdexcept>
#include <string>

#include "webgeom/errors.hpp"

namespace webgeom::combinat {

namespace {

constexpr Int kSumCap = 100000;

Int to_int_checked(const mpq_class& v) {
  if (v.get_den() != 1) throw std::logic_error("non-integral bound sum: " + v.get_str());
  if (!v.get_num().fits_slong_p()) throw std::overflow_error("bound does not fit in 64 bits");
  return v.get_num().get_si();
}

// sum_{h>=0} weight(h) * (d - ratio(h))^+, stopping at the first nonpositive clamp.
template <class Weight, class Ratio>
mpq_class clamped_sum(Int d, Weight weight, Ratio ratio) {
  mpq_class total = 0;
  for (Int h = 0; h < kSumCap; ++h) {
    mpq_class gap = mpq_class(d) - ratio(h);
    if (sgn(gap) <= 0) return total;
    total += mpq_class(weight(h)) * gap;
  }
  throw std::logic_error("clamped sum did not terminate");
}

template <class Ratio>
std::optional<Int> last_at_most(Int d, Ratio ratio) {
  std::optional<Int> last;
  for (Int k = 0; k < kSumCap; ++k) {
    if (ratio(k) > d) return last;
    last = k;
  }
  throw std::logic_error("threshold search did not terminate");
}

}  // namespace

Int binom(Int r, Int s) {
  if (r < 0) throw InvalidArgument("binom: negative r");
  if (s < 0 || s > r) return 0;
  if (s > r - s) s = r - s;
  Int out = 1;
  for (Int i = 0; i < s; ++i) out = out * (r - i) / (i + 1);
  return out;
}

Int c(Int r, Int h) {
  if (r < 1 || h < 0) throw InvalidArgument("c(r,h) needs r >= 1, h >= 0");
  return binom(r - 1 + h, h);
}

Int z_alternating(Int n, Int p, Int k) {
  Int total = 0;
  for (Int j = 0; j <= p - 1; ++j) {
    Int sign = ((p - j + 1) % 2 == 0) ? 1 : -1;
    total += sign * binom(n, j) * c(n, k + p - j);
  }
  return total;
}

Int z(Int n, Int p, Int k) {
  if (p < 1 || p > n || k < 0) throw InvalidArgument("z(n,p,k) needs 1 <= p <= n, k >= 0");
  Int out = binom(n + k, n - p) * c(p, k);
  assert(out == z_alternating(n, p, k));
  return out;
}

mpq_class plain_ratio(Int n, Int q, Int p, Int k) {
  mpq_class r(binom(n, p) * c(n, k), binom(q, p) * c(q, k));
  r.canonicalize();
  return r;
}

mpq_class closed_ratio(Int n, Int q, Int p, Int k) {
  mpq_class r(z(n, p, k), z(q, p, k));
  r.canonicalize();
  return r;
}

std::optional<Int> k_zero(Int n, Int d, Int q, Int p) {
  return last_at_most(d, [&](Int k) { return plain_ratio(n, q, p, k); });
}

std::optional<Int> k_one(Int n, Int d, Int q, Int p) {
  return last_at_most(d, [&](Int k) { return closed_ratio(n, q, p, k); });
}

Int pi_henaut(Int n, Int d, Int q, Int p) {
  if (q <= 0 || n % q != 0) throw InvalidArgument("pi_henaut requires q to divide n");
  Int slope = n / q - 1;
  Int total = 0;
  for (Int h = 0; h < kSumCap; ++h) {
    Int inner = d - slope * (p + h) - 1;
    if (inner <= 0) return binom(q, p) * total;
    total += c(q, h) * inner;
  }
  throw std::logic_error("pi_henaut did not terminate");
}

Int pi_zero(Int n, Int d, Int q, Int p) {
  return to_int_checked(clamped_sum(
      d, [&](Int h) { return binom(q, p) * c(q, h); }, [&](Int h) { return plain_ratio(n, q, p, h); }));
}

Int pi_prime(Int n, Int d, Int q, Int p) {
  return to_int_checked(clamped_sum(
      d, [&](Int h) { return z(q, p, h); }, [&](Int h) { return closed_ratio(n, q, p, h); }));
}

Sizes sizes(Int n, Int d, Int q, Int p, Int k) {
  if (k < 0) throw InvalidArgument("sizes: k must be >= 0");
  Sizes s{0, 0, 0, 0};
  for (Int h = 0; h <= k; ++h) {
    s.alpha += d * binom(q, p) * c(q, h);
    s.beta += binom(n, p) * c(n, h);
    s.alpha_tilde += d * z(q, p, h);
    s.beta_tilde += z(n, p, h);
  }
  return s;
}

bool is_calibrated(Int n, Int d, Int q, Int p) {
  auto k0 = k_zero(n, d, q, p);
  return k0 && plain_ratio(n, q, p, *k0) == d;
}

bool is_strongly_calibrated(Int n, Int d, Int q, Int p) {
  auto k1 = k_one(n, d, q, p);
  return k1 && closed_ratio(n, q, p, *k1) == d;
}

bool excess_condition(Int n, Int d, Int q, Int p) {
  auto k0 = k_zero(n, d, q, p);
  auto k1 = k_one(n, d, q, p);
  if (!k0 || !k1) return true;
  Int top = std::min(*k0, *k1);
  for (Int k = 0; k <= top; ++k) {
    Sizes s = sizes(n, d, q, p, k);
    if (s.alpha_tilde - s.beta_tilde > s.alpha - s.beta) return false;
  }
  return true;
}

void check_parameters(Int n, Int d, Int q, Int p) {
  if (n < 2) throw InvalidArgument("dimension n must be >= 2");
  if (q < 1 || q > n - 1) throw InvalidArgument("codimension q must satisfy 1 <= q <= n-1");
  if (d < 1) throw InvalidArgument("number of foliations d must be >= 1");
  if (p < 1 || p > q) throw InvalidArgument("form degree p must satisfy 1 <= p <= q");
}

BoundProfile bound_profile(Int n, Int d, Int q, Int p) {
  check_parameters(n, d, q, p);
  BoundProfile b;
  b.n = n;
  b.q = q;
  b.d = d;
  b.p = p;
  b.k0 = k_zero(n, d, q, p);
  b.k1 = k_one(n, d, q, p);
  b.pi0 = pi_zero(n, d, q, p);
  b.pi_prime = pi_prime(n, d, q, p);
  if (n % q == 0) b.pi_henaut = pi_henaut(n, d, q, p);
  b.calibrated = is_calibrated(n, d, q, p);
  b.strongly_calibrated = is_strongly_calibrated(n, d, q, p);
  b.excess_ok = excess_condition(n, d, q, p);
  return b;
}

Int pi_prime_curves_top(Int n, Int d) {
  Int total = 0;
  for (Int h = 0; h <= d - n - 1; ++h) total += binom(n - 2 + h, h) * (d - n - h);
  return total;
}

Int pi_prime_curves(Int n, Int d, Int p) {
  return to_int_checked(clamped_sum(
      d, [&](Int h) { return binom(n - 1 + h, n - 1 - p) * binom(p - 1 + h, h); },
      [&](Int h) {
        mpq_class r(n + h, n - p);
        r.canonicalize();
        return r;
      }));
}

Int pi_zero_curves(Int n, Int d, Int p) {
  mpq_class s = clamped_sum(
      d, [&](Int h) { return binom(n - 2 + h, n - 2); },
      [&](Int h) {
        mpq_class r(n * (n - 1 + h), (n - 1) * (n - p));
        r.canonicalize();
        return r;
      });
  return to_int_checked(mpq_class(binom(n - 1, p)) * s);
}

Int pi_prime_codim_one(Int n, Int d) {
  Int total = 0;
  for (Int h = 1; h < kSumCap; ++h) {
    Int gap = d - c(n, h);
    if (gap <= 0) return total;
    total += gap;
  }
  throw std::logic_error("pi_prime_codim_one did not terminate");
}

mpq_class pi_zero_curves_dim3_closed_form(Int d) {
  Int delta = (4 * d - 2) / 3;
  Int rho = (4 * d - 2) - 3 * delta;
  mpq_class v(delta * (delta + 1) * (delta - rho), 4);
  v.canonicalize();
  return v;
}

}  // namespace webgeom::combinat
