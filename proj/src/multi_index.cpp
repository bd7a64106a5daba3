#include "webgeom/multi_index.hpp"

#include <algorithm>
#include <numeric>

namespace webgeom {

unsigned degree(const MultiIndex& l) { return std::accumulate(l.begin(), l.end(), 0u); }

MultiIndex unit(std::size_t r, std::size_t j) {
  MultiIndex l(r, 0);
  l[j] = 1;
  return l;
}

MultiIndex plus_unit(MultiIndex l, std::size_t j) {
  ++l[j];
  return l;
}

MultiIndex minus_unit(MultiIndex l, std::size_t j) {
  --l[j];
  return l;
}

std::size_t first_nonzero(const MultiIndex& l) {
  for (std::size_t j = 0; j < l.size(); ++j)
    if (l[j]) return j;
  return l.size();
}

mpz_class factorial(const MultiIndex& l) {
  mpz_class out = 1;
  for (unsigned e : l) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), e);
    out *= f;
  }
  return out;
}

namespace {

void fill(std::size_t pos, unsigned left, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (unsigned e = left + 1; e-- > 0;) {
    cur[pos] = e;
    fill(pos + 1, left - e, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> homogeneous(std::size_t r, unsigned h) {
  std::vector<MultiIndex> out;
  if (r == 0) {
    if (h == 0) out.emplace_back();
    return out;
  }
  MultiIndex cur(r, 0);
  fill(0, h, cur, out);
  return out;
}

std::vector<Subset> subsets(int n, int p) {
  std::vector<Subset> out;
  if (p < 0 || p > n) return out;
  Subset cur(p);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[i] == n - p + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < p; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

int subset_rank(const std::vector<Subset>& all, const Subset& s) {
  auto it = std::find(all.begin(), all.end(), s);
  return it == all.end() ? -1 : static_cast<int>(it - all.begin());
}

std::string to_string(const MultiIndex& l) {
  std::string s = "(";
  for (std::size_t j = 0; j < l.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(l[j]);
  }
  return s + ")";
}

std::string subset_string(const Subset& s) {
  std::string out;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(s[j] + 1);
  }
  return out;
}

}  // namespace webgeom
