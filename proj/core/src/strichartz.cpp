#include <cmath>

#include "nls4/common.hpp"
#include "nls4/strichartz.hpp"

namespace nls4 {

Exponent parse_exponent(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "oo") return Exponent::inf();
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos)
      return Exponent::of(Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))));
    if (s.find_first_of(".eE") != std::string::npos) return Exponent::of(to_rational(std::stod(s)));
    return Exponent::of(Rational(std::stoll(s)));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::invalid_configuration, "cannot parse exponent '" + s + "'");
  }
}

bool strichartz_admissible(Exponent q, Exponent r, Rational alpha) {
  if (alpha < Rational(0) || alpha > Rational(1)) return false;
  if (!q.infinite && q.value < Rational(1)) return false;
  if (!r.infinite && r.value < Rational(1)) return false;
  const Rational a1 = Rational(1) + alpha;
  if (!r.infinite && r.value < Rational(2)) return false;
  // q >= 8/(1+alpha)  <=>  1/q <= (1+alpha)/8
  if (q.reciprocal() > a1 / Rational(8)) return false;
  return Rational(4) * q.reciprocal() + a1 * r.reciprocal() == a1 / Rational(2);
}

}  // namespace nls4
