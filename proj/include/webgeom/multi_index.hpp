#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace webgeom {

// Derivation multi-index over r variables.
using MultiIndex = std::vector<unsigned>;
// Strictly increasing 0-based positions.
using Subset = std::vector<int>;

unsigned degree(const MultiIndex& l);
MultiIndex unit(std::size_t r, std::size_t j);
MultiIndex plus_unit(MultiIndex l, std::size_t j);
// Requires l[j] > 0.
MultiIndex minus_unit(MultiIndex l, std::size_t j);
// Index of the first nonzero entry, or l.size() for the zero index.
std::size_t first_nonzero(const MultiIndex& l);
// prod_j l_j!
mpz_class factorial(const MultiIndex& l);

// All indices of degree h in r variables, descending lexicographic: (h,0,..) first.
std::vector<MultiIndex> homogeneous(std::size_t r, unsigned h);
// All p-subsets of {0..n-1}, ascending lexicographic.
std::vector<Subset> subsets(int n, int p);

// Position of s within subsets(n, |s|), or -1.
int subset_rank(const std::vector<Subset>& all, const Subset& s);

std::string to_string(const MultiIndex& l);
// 1-based, comma separated.
std::string subset_string(const Subset& s);

}  // namespace webgeom
