#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nls4/fit.hpp"
#include "nls4/imethod.hpp"

namespace nls4 {

using Quad = std::array<double, 4>;

struct HyperplaneSample {
  Quad xi{};
  Quad dyadic{};  // largest power of two <= |xi_i| (0 for xi_i = 0)
};

// Completes (a, b, c) to the zero-sum tuple (a, b, c, -(a+b+c)).
HyperplaneSample make_hyperplane_sample(double a, double b, double c);

double resonance_lhs(const Quad& x);          // x1^4 - x2^4 + x3^4 - x4^4
double resonance_rhs_signed(const Quad& x);   // (x1+x2)(x1+x4)(sum xi^2 + 2(x1+x3)^2)
double resonance_rhs_display(const Quad& x);  // (x1+x2)(x2+x3)(x1^2+x2^2+x3^2+(x1+x2+x3)^2+2(x1+x3)^2)

// |LHS - signed RHS|; throws off_hyperplane unless |sum| <= 1e-9 max|xi|.
double factorization_residual(const Quad& x);
// ||LHS| - |display RHS||.
double factorization_residual_abs(const Quad& x);

struct SymbolicFactorization {
  bool signed_identity = false;       // LHS - signed RHS == 0 after x4 = -(x1+x2+x3)
  bool display_abs_identity = false;  // LHS + display RHS == 0, so |LHS| = |display|
  bool display_signed_identity = false;
  std::string signed_residual;
  std::string display_residual;
};
SymbolicFactorization symbolic_factorization();

struct SweepReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_rel_signed = 0.0;  // residual / max|xi|^4
  double max_rel_abs = 0.0;
};
// Magnitudes log-uniform over [1e-3, 1e3] with random signs.
SweepReport factorization_sweep(std::size_t samples, std::uint64_t seed);

struct MeanValueReport {
  std::size_t samples = 0;
  double c1 = 0.0;     // max |a(xi+eta)-a(xi)| / (|eta| sup|a'|)
  double c2 = 0.0;     // max |double difference| / (|eta||lambda| sup|a''|)
  double norm1 = 0.0;  // max |a(xi+eta)-a(xi)| / (|eta| a(xi)/|xi|)
  double norm2 = 0.0;  // max |double difference| / (|eta||lambda| a(xi)/xi^2)
  double max_diff1 = 0.0;
  double max_diff2 = 0.0;
  // Power branch only: max relative gap between the sampled sups and the closed form.
  double sup_rel_err1 = 0.0;
  double sup_rel_err2 = 0.0;
};
// a = m^2; |xi| log-uniform in [xi_lo, xi_hi] with random sign, |eta|,|lambda| <= |xi|/8.
MeanValueReport mean_value_bound_check(const IMethodParams& p, std::size_t samples, std::uint64_t seed,
                                       double xi_lo, double xi_hi);

struct TrilinearRow {
  double N = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct TrilinearConfig {
  std::vector<double> Ns{16, 32, 64, 128, 256, 512};
  double s = -0.5;
  double b = 0.5;     // recorded only: the modulation weight is ~1 on the strip
  int band_modes = 32;  // lattice spacing is |A| / band_modes
  int time_samples = 401;
  double t_max = 1.0;
};

struct TrilinearResult {
  std::vector<TrilinearRow> rows;
  FitResult fit;
  double predicted = 0.0;  // -2s-1
  bool diverges = false;   // fitted exponent above 0.15
};

TrilinearResult trilinear_counterexample(const TrilinearConfig& cfg);

}  // namespace nls4
