#pragma once

#include "nls4/evolution.hpp"

namespace nls4 {

struct ConservedReport {
  double mass = 0.0;
  double hamiltonian = 0.0;
  double kinetic = 0.0;  // (1/2) int |d^2 u|^2  (|du|^2 for the cubic equation)
  double quartic = 0.0;  // int |u|^4
};

double mass(const Field& f);

// H = -o * kinetic + (kappa/4) * quartic, conserved by the flow described in
// EvolutionConfig. For o = -1 this is (1/2) int |u_xx|^2 + (kappa/4) int |u|^4.
ConservedReport hamiltonian(const Field& f, double kappa, int orientation = -1,
                            Equation eq = Equation::quartic);
ConservedReport hamiltonian(const Field& f, const Spectrum& s, double kappa, int orientation, Equation eq);

struct ScaledField {
  Field field;
  double time_factor = 1.0;  // lambda^4: u_lambda(t) pairs with u(lambda^4 t)
};

// lambda^2 u(lambda x) on the grid of length L/lambda with the same samples.
ScaledField scale_transform(const Field& f, double lambda);

struct CovarianceReport {
  double defect = 0.0;           // ||S(u(lambda^4 t)) - u_lambda(t)||_{L2}
  double error_direct = 0.0;     // discretization error of the unscaled run, on the scaled grid
  double error_scaled = 0.0;     // discretization error of the scaled run
  double bound() const { return error_direct + error_scaled; }
};

// Evolves u0 to lambda^4 t and scale_transform(u0) to t with the same dt and
// compares. Errors are measured against ifrk4 references at dt/reference_refine.
CovarianceReport check_scaling_covariance(const Field& u0, double lambda, const EvolutionConfig& cfg, double t,
                                          int reference_refine = 8);

}  // namespace nls4
