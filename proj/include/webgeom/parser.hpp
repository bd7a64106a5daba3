#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "webgeom/expr.hpp"

namespace webgeom {

// expr   := term (('+'|'-') term)*
// term   := factor (('*'|'/') factor)*
// factor := '-' factor | base ('^' digits)?
// base   := integer | integer '/' integer | name | '(' expr ')' | ('sqrt'|'ln'|'atan') '(' expr ')'
// Throws ParseError with 1-based line and column. When allowed is non-null, any other name
// is rejected.
Expr parse_expression(std::string_view text, const std::vector<std::string>* allowed = nullptr);

}  // namespace webgeom
