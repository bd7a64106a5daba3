#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "webgeom/combinat.hpp"
#include "webgeom/kernels.hpp"
#include "webgeom/web.hpp"

namespace webgeom {

struct AnalysisOptions {
  Backend backend = Backend::BigFloat;
  unsigned digits = kDefaultDigits;
  double tolerance = 1e-20;
  std::size_t points = 3;
  std::uint64_t seed = 0;
  std::vector<Point> explicit_points;  // used instead of sampling when nonempty
  bool parallel = true;
  // Also rank M_k and report rho_k (costlier than P_k alone).
  bool with_m = true;
};

// Ranks of P_k (or P~_k) and M_k (or M~_k) at every sample point; -1 marks a failed point.
struct OrderRecord {
  unsigned k = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t max_rank = 0;
  std::vector<long> ranks;
  bool attained = false;
  std::size_t m_rows = 0;
  std::size_t m_cols = 0;  // alpha_k (or alpha~_k)
  std::vector<long> m_ranks;
  std::optional<long> rho;  // alpha_k - best rank of M_k

  bool operator==(const OrderRecord&) const = default;
};

enum class Verdict { Ordinary, NotOrdinary, Undetermined };
std::string verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& s);

struct OrdinarityReport {
  int p = 0;
  bool closed = false;
  Verdict verdict = Verdict::Undetermined;
  int horizon = 0;              // largest order checked
  bool top_square = false;      // P_{k0} (P~_{k1}) square: horizon = k0 instead of k0+1
  std::optional<bool> bracket;  // q = n-1, p <= n-2: some pair has X_i, X_j, [X_i,X_j] dependent
  bool routed_to_closed = false;  // p = q
  std::vector<std::string> points;
  std::vector<OrderRecord> orders;

  bool operator==(const OrdinarityReport&) const = default;
};

// Sample points where every generator and jacobian evaluates and each foliation has rank q.
std::vector<Point> choose_points(const Web& web, const AnalysisOptions& opt);

std::vector<OrderRecord> rank_profile(const Web& web, int p, unsigned k_max, bool closed,
                                      const std::vector<Point>& points, const AnalysisOptions& opt);

// Rank maximality of P_k for k up to the horizon (k0, plus one unless P_{k0} is square).
// p = q delegates to the closed variant.
OrdinarityReport is_p_ordinary(const Web& web, int p, const AnalysisOptions& opt = {});
OrdinarityReport is_strongly_p_ordinary(const Web& web, int p, const AnalysisOptions& opt = {});

// Bracket criterion for q = n-1: true when some pair of tangent fields spans a bracket-closed plane.
std::optional<bool> bracket_criterion(const Web& web, int p, const std::vector<Point>& points);

struct BoundReport {
  combinat::BoundProfile profile;
  OrdinarityReport plain;
  OrdinarityReport strong;
  bool infinite = false;                       // bracket criterion fired
  std::optional<combinat::Int> rank_bound;     // r_p <= pi0 when ordinary
  std::optional<combinat::Int> closed_bound;   // r~_p <= pi' when strongly ordinary
};

BoundReport bound_report(const Web& web, int p, const AnalysisOptions& opt = {});

}  // namespace webgeom
