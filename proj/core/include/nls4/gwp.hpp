#pragma once

#include <boost/rational.hpp>

namespace nls4 {

using Rational = boost::rational<long long>;

// Exponents of the rescaling argument, all as powers of N:
//   lambda ~ N^{lambda_exp}, T ~ N^{time_exp}, ||u(t)||_{H^s} <~ t^{growth} ||u0||_{H^s}.
struct GwpExponents {
  Rational lambda_exp;
  Rational time_exp;
  Rational growth;
};

// Valid for -3/2 < s <= 0 with 14 s + 9 > 0 (otherwise T does not grow with N).
GwpExponents gwp_exponents(Rational s);

struct GwpParameters {
  GwpExponents exponents;
  double N = 0.0;
  double lambda = 0.0;
  double growth_exponent = 0.0;
};

// Solves lambda^{-3/2-s} N^{-s} ||u0|| = eps0 and N^{(14s+9)/(3+2s)} = T.
GwpParameters gwp_parameters(Rational s, double T, double u0_norm, double eps0);

// Closest rational with denominator <= max_den; throws if it is not exact to 1e-12.
Rational to_rational(double v, long long max_den = 10000);

}  // namespace nls4
