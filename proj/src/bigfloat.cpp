#include "webgeom/bigfloat.hpp"

#include <iomanip>
#include <sstream>

namespace webgeom {

PrecisionScope::PrecisionScope(unsigned digits) : saved_(BigFloat::default_precision()) {
  BigFloat::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { BigFloat::default_precision(saved_); }

BigFloat to_bigfloat(const mpq_class& q) {
  BigFloat out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

std::string to_string(const BigFloat& x, int digits) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits - 1) << x;
  return os.str();
}

}  // namespace webgeom
