#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "webgeom/poly.hpp"

namespace webgeom {

inline constexpr int kMaxSampleInt = 97;
inline constexpr std::size_t kSampleRetries = 64;

// Seeded stream of points whose coordinates are positive rationals a/b, 1 <= a, b <= 97.
class PointSampler {
 public:
  PointSampler(std::vector<VarId> vars, std::uint64_t seed) : vars_(std::move(vars)), rng_(seed) {}
  Point next();

 private:
  std::vector<VarId> vars_;
  std::mt19937_64 rng_;
};

// count points accepted by accept; rejected draws are replaced. Throws PointSelectionFailed
// after count * kSampleRetries draws.
std::vector<Point> sample_points(const std::vector<VarId>& vars, std::size_t count, std::uint64_t seed,
                                 const std::function<bool(const Point&)>& accept = {});

// "x=1/3,y=2,z=0": every listed name must be in names, every name must be bound.
// Throws InvalidArgument.
Point parse_point(std::string_view text, const std::vector<std::string>& names);
std::string point_string(const Point& pt, const std::vector<std::string>& names);

}  // namespace webgeom
