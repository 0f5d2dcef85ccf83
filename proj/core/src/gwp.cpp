#include <cmath>

#include "nls4/common.hpp"
#include "nls4/gwp.hpp"

namespace nls4 {

GwpExponents gwp_exponents(Rational s) {
  if (s > Rational(0)) fail(ErrorKind::invalid_configuration, "GWP arithmetic needs s <= 0");
  const Rational d = Rational(3) + Rational(2) * s;
  if (d <= Rational(0)) fail(ErrorKind::invalid_configuration, "GWP arithmetic needs s > -3/2");
  const Rational q = Rational(14) * s + Rational(9);
  if (q <= Rational(0))
    fail(ErrorKind::invalid_configuration, "14s+9 <= 0: N cannot be chosen as a growing power of T");
  GwpExponents e;
  e.lambda_exp = Rational(-2) * s / d;
  e.time_exp = q / d;
  e.growth = -s * d / q;
  return e;
}

GwpParameters gwp_parameters(Rational s, double T, double u0_norm, double eps0) {
  if (!(T > 0.0) || !(u0_norm > 0.0) || !(eps0 > 0.0))
    fail(ErrorKind::invalid_configuration, "T, ||u0|| and eps0 must be positive");
  GwpParameters p;
  p.exponents = gwp_exponents(s);
  const double sd = boost::rational_cast<double>(s);
  const double te = boost::rational_cast<double>(p.exponents.time_exp);
  p.N = std::pow(T, 1.0 / te);
  p.lambda = std::pow(std::pow(p.N, -sd) * u0_norm / eps0, 1.0 / (1.5 + sd));
  p.growth_exponent = boost::rational_cast<double>(p.exponents.growth);
  if (!std::isfinite(p.N) || !std::isfinite(p.lambda))
    fail(ErrorKind::numeric_domain, "GWP parameters overflow");
  return p;
}

Rational to_rational(double v, long long max_den) {
  if (!std::isfinite(v)) fail(ErrorKind::invalid_configuration, "cannot convert non-finite value to a rational");
  long long best_n = 0, best_d = 1;
  double best_err = 1e300;
  for (long long d = 1; d <= max_den; ++d) {
    long long n = std::llround(v * static_cast<double>(d));
    double err = std::abs(v - static_cast<double>(n) / static_cast<double>(d));
    if (err < best_err) {
      best_err = err;
      best_n = n;
      best_d = d;
      if (err <= 1e-12 * std::max(1.0, std::abs(v))) break;
    }
  }
  if (best_err > 1e-12 * std::max(1.0, std::abs(v)))
    fail(ErrorKind::invalid_configuration, "value is not a rational with small denominator");
  return Rational(best_n, best_d);
}

}  // namespace nls4
