#pragma once

#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace webgeom {

using BigFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultDigits = 50;

// Sets the working precision (decimal digits) of newly created BigFloat values and restores
// the previous one on exit. The precision is process-wide: open scopes outside parallel regions.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

BigFloat to_bigfloat(const mpq_class& q);

// Scientific notation with the given number of significant digits.
std::string to_string(const BigFloat& x, int digits = 20);

}  // namespace webgeom
