#pragma once

#include <string>

#include "nls4/gwp.hpp"

namespace nls4 {

// Lebesgue exponent in [1, inf]; infinity is a flag, 1/inf = 0.
struct Exponent {
  bool infinite = false;
  Rational value{1};

  static Exponent inf() { return {true, Rational(0)}; }
  static Exponent of(Rational v) { return {false, v}; }
  Rational reciprocal() const { return infinite ? Rational(0) : Rational(1) / value; }
};

Exponent parse_exponent(const std::string& s);  // "inf", "4", "8/3", "2.5"

// r >= 2, q >= 8/(1+alpha) and 4/q + (1+alpha)/r = (1+alpha)/2, exactly.
bool strichartz_admissible(Exponent q, Exponent r, Rational alpha);

}  // namespace nls4
