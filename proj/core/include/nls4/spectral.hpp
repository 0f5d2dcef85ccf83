#pragma once

#include <cstdint>
#include <limits>

#include "nls4/grid.hpp"

namespace nls4 {

Spectrum apply_symbol(const Spectrum& s, const SymbolFn& sigma);
Field apply_symbol(const Field& f, const SymbolFn& sigma);

SymbolFn abs_power_symbol(double alpha);
SymbolFn constant_symbol(cplx value);

Field fractional_derivative(const Field& f, double alpha);

// ||u||_{H^s}^2 = L * sum <xi>^{2s} |c_k|^2. The homogeneous variant uses |xi|^{2s}
// and drops the xi = 0 mode.
double sobolev_norm(const Spectrum& s, double sob, bool homogeneous = false);
double sobolev_norm(const Field& f, double sob, bool homogeneous = false);

inline constexpr double p_infinity = std::numeric_limits<double>::infinity();
double lebesgue_norm(const Field& f, double p);

// Smooth Littlewood-Paley bump: 1 on [0,1], 0 beyond 2.
double lp_phi(double r);
double lp_multiplier(double xi, double N);
Field project_band(const Field& f, double N);
Spectrum project_band(const Spectrum& s, double N);

struct GaussianSpec {
  double amplitude = 1.0;
  double width = 1.0;
  double carrier_k0 = 0.0;
  double center = 0.0;
};
Field make_gaussian(const Grid& g, const GaussianSpec& spec);
Field make_gaussian(const Grid& g, double A, double w, double k0, double x0);

// Band-limited random field: c_k = A (g1 + i g2) / sqrt(2) / (1 + (k/K)^2) on |k| <= K
// with standard normal g1, g2 drawn from a generator seeded by `seed`.
Field random_field(const Grid& g, int K, double amplitude, std::uint64_t seed);

struct TailReport {
  double spectral = 0.0;  // mass fraction with |k| >= 3M/8
  double boundary = 0.0;  // mass fraction with |x| >= 0.45 L
};
TailReport tails(const Field& f);
TailReport tails(const Field& f, const Spectrum& s);
// Throws resolution if either fraction exceeds tol.
void require_tails(const Field& f, double tol, bool check_boundary = true);

double l2_mass(const Field& f);
double l2_mass(const Spectrum& s);
Field difference(const Field& a, const Field& b);

}  // namespace nls4
