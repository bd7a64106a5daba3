#include "webgeom/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "webgeom/errors.hpp"

namespace webgeom {

namespace {

struct Registry {
  std::shared_mutex mu;
  std::deque<std::string> names;  // deque keeps references stable
  std::unordered_map<std::string, VarId> ids;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

VarId intern(std::string_view name) {
  Registry& r = registry();
  std::string key(name);
  {
    std::shared_lock lock(r.mu);
    auto it = r.ids.find(key);
    if (it != r.ids.end()) return it->second;
  }
  std::unique_lock lock(r.mu);
  auto it = r.ids.find(key);
  if (it != r.ids.end()) return it->second;
  VarId id = static_cast<VarId>(r.names.size());
  r.names.push_back(key);
  r.ids.emplace(std::move(key), id);
  return id;
}

const std::string& symbol_name(VarId id) {
  Registry& r = registry();
  std::shared_lock lock(r.mu);
  if (id >= r.names.size()) throw InvalidArgument("unknown variable id " + std::to_string(id));
  return r.names[id];
}

}  // namespace webgeom
