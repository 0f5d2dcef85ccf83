#pragma once

#include <vector>

#include "nls4/evolution.hpp"
#include "nls4/multilinear.hpp"

namespace nls4 {

// Interpolation of log m on N <= |xi| <= 2N as a function of t = log2(|xi|/N):
// log_cubic matches values and first derivatives (C^1), log_quintic also
// matches second derivatives (C^2).
enum class Interp { log_cubic, log_quintic };

struct IMethodParams {
  double N = 1.0;
  double s = -0.5;
  Interp interp = Interp::log_cubic;
};

void validate(const IMethodParams& p);
double m_value(const IMethodParams& p, double xi);
double m_squared(const IMethodParams& p, double xi);
SymbolFn i_multiplier(const IMethodParams& p);

Field apply_I(const Field& f, const IMethodParams& p);
Spectrum apply_I(const Spectrum& s, const IMethodParams& p);
double energy2(const Field& f, const IMethodParams& p);
double energy2(const Spectrum& s, const IMethodParams& p);

// Flow the correction is built for: i u_t = -o u_xxxx + kappa |u|^2 u.
// The default o = -1, kappa = +1 is i u_t = u_xxxx + |u|^2 u.
struct FlowSign {
  int orientation = -1;
  double kappa = 1.0;
};

// Tolerance for the hyperplane check sum(xi) = 0, relative to max |xi_i|.
inline constexpr double hyperplane_tol = 1e-9;

cplx symbol_alpha4(double x1, double x2, double x3, double x4);
double symbol_M4(double x1, double x2, double x3, double x4, const IMethodParams& p);
// sigma_4 = -kappa*o*M4/R with R = x1^4 - x2^4 + x3^4 - x4^4, so that the quartic
// part of d/dt Lambda_4(sigma_4) cancels d/dt E_I^2. For the default flow this is
// -M4/(i*alpha_4). Zero on removable resonances; throws singularity otherwise.
cplx symbol_sigma4(double x1, double x2, double x3, double x4, const IMethodParams& p, FlowSign sign = {});
cplx symbol_M6(const double* xi6, const IMethodParams& p, FlowSign sign = {});

double correction_term(const Spectrum& s, const IMethodParams& p, int K, FlowSign sign = {});

double energy4(const Field& f, const IMethodParams& p, const ModeSet& modes, FlowSign sign = {});
double energy4(const Spectrum& s, const IMethodParams& p, const ModeSet& modes, FlowSign sign = {});

// Precomputed sigma_4 on the lattice |k| <= K for repeated E_I^4 evaluation.
class Energy4Evaluator {
public:
  Energy4Evaluator(const Grid& g, const IMethodParams& p, int K, FlowSign sign = {});
  double energy2(const Spectrum& s) const;
  cplx correction(const Spectrum& s) const;  // Lambda_4(sigma_4; u)
  double energy4(const Spectrum& s) const;
  int K() const { return K_; }

private:
  Grid grid_;
  IMethodParams p_;
  int K_;
  std::vector<double> sigma_;  // indexed [(k1+K)*W + (k2+K)]*W + (k3+K)
  std::vector<double> msq_;
};

struct DerivativeIdentity {
  double dE2_fd = 0.0;
  cplx lambda4_M4{};      // Lambda_4(M_4; u)
  cplx predicted_dE2{};   // i*kappa*Lambda_4(M_4)
  double defect2 = 0.0;   // |dE2_fd - predicted| / |dE2_fd|
  double dE4_fd = 0.0;
  double re_lambda6 = 0.0;  // Re Lambda_6(M_6)
  double im_lambda6 = 0.0;
  double ratio = 0.0;     // dE4_fd / Re Lambda_6(M_6)
  double defect4 = 0.0;   // |dE4_fd - 4 kappa Re Lambda_6| / |dE4_fd|
  long long terms6 = 0;
};

struct DerivativeOptions {
  double h = 1e-5;       // finite difference spacing
  int substeps = 8;      // ifrk4 substeps per h on the Galerkin oracle
};

// Five-point centered differences of E_I^2 and E_I^4 along the Galerkin flow on
// |k| <= K, compared with the multilinear predictions.
DerivativeIdentity derivative_identity_check(const Field& f, const IMethodParams& p, const EvolutionConfig& cfg,
                                             const ModeSet& modes, const DerivativeOptions& opt = {});

struct ConstantFit {
  double c = 0.0;           // least squares dE4 ~ c * Re Lambda_6
  double max_rel_spread = 0.0;
  std::vector<double> ratios;
};
ConstantFit fit_derivative_constant(const std::vector<DerivativeIdentity>& runs);

}  // namespace nls4
