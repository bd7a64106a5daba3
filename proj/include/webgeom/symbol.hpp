#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace webgeom {

// Process-wide interned variable names. Ids are dense and assigned in first-use order,
// which is also the variable order used by the graded-lex monomial order.
using VarId = std::uint32_t;

VarId intern(std::string_view name);
const std::string& symbol_name(VarId id);

}  // namespace webgeom
