#include "webgeom/sampling.hpp"

#include <sstream>

#include "webgeom/errors.hpp"

namespace webgeom {

Point PointSampler::next() {
  std::uniform_int_distribution<int> dist(1, kMaxSampleInt);
  Point pt;
  for (VarId v : vars_) {
    int a = dist(rng_);
    int b = dist(rng_);
    mpq_class x(a, b);
    x.canonicalize();
    pt[v] = x;
  }
  return pt;
}

std::vector<Point> sample_points(const std::vector<VarId>& vars, std::size_t count, std::uint64_t seed,
                                 const std::function<bool(const Point&)>& accept) {
  PointSampler sampler(vars, seed);
  std::vector<Point> out;
  for (std::size_t draws = 0; out.size() < count; ++draws) {
    if (draws >= count * kSampleRetries) throw PointSelectionFailed("no acceptable sample point after retries");
    Point pt = sampler.next();
    if (!accept || accept(pt)) out.push_back(std::move(pt));
  }
  return out;
}

Point parse_point(std::string_view text, const std::vector<std::string>& names) {
  Point pt;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("point entry without '=': " + item);
    std::string name = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    auto trim = [](std::string& t) {
      t.erase(0, t.find_first_not_of(" \t"));
      t.erase(t.find_last_not_of(" \t") + 1);
    };
    trim(name);
    trim(value);
    bool known = false;
    for (const auto& n : names) known = known || n == name;
    if (!known) throw InvalidArgument("unknown variable in point: " + name);
    mpq_class x;
    if (x.set_str(value, 10) != 0) throw InvalidArgument("bad rational in point: " + value);
    if (sgn(x.get_den()) == 0) throw InvalidArgument("zero denominator in point: " + value);
    x.canonicalize();
    pt[intern(name)] = x;
  }
  for (const auto& n : names)
    if (!pt.count(intern(n))) throw InvalidArgument("point does not bind " + n);
  return pt;
}

std::string point_string(const Point& pt, const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    auto it = pt.find(intern(n));
    if (it == pt.end()) continue;
    if (!out.empty()) out += ",";
    out += n + "=" + it->second.get_str();
  }
  return out;
}

}  // namespace webgeom
