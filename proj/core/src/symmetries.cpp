#include <cmath>

#include "nls4/symmetries.hpp"

namespace nls4 {

double mass(const Field& f) { return l2_mass(f); }

ConservedReport hamiltonian(const Field& f, const Spectrum& s, double kappa, int orientation, Equation eq) {
  ConservedReport r;
  double kin = 0.0, m = 0.0;
  for (int i = 0; i < s.grid.M; ++i) {
    double a = std::norm(s.c[i]);
    m += a;
    kin += dispersion(eq, s.grid.xi(i)) * a;
  }
  r.mass = l2_mass(f);
  r.kinetic = 0.5 * s.grid.L * kin;
  double q = 0.0;
  for (const auto& v : f.u) {
    double a = std::norm(v);
    q += a * a;
  }
  r.quartic = q * f.grid.dx();
  r.hamiltonian = -orientation * r.kinetic + 0.25 * kappa * r.quartic;
  return r;
}

ConservedReport hamiltonian(const Field& f, double kappa, int orientation, Equation eq) {
  return hamiltonian(f, to_spectrum(f), kappa, orientation, eq);
}

ScaledField scale_transform(const Field& f, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorKind::invalid_configuration, "lambda must be positive");
  TailReport tr = tails(f);
  if (tr.spectral > 1e-8) fail(ErrorKind::resolution, "field is not resolved; scaling would carry the tail along");
  ScaledField out;
  out.field = Field(make_grid(f.grid.L / lambda, f.grid.M, f.grid.carrier));
  const double a = lambda * lambda;
  for (int j = 0; j < f.grid.M; ++j) out.field.u[j] = a * f.u[j];
  out.time_factor = a * a;
  return out;
}

CovarianceReport check_scaling_covariance(const Field& u0, double lambda, const EvolutionConfig& cfg, double t,
                                          int reference_refine) {
  if (!(t > 0.0)) fail(ErrorKind::invalid_configuration, "covariance time must be positive");
  if (reference_refine < 2) fail(ErrorKind::invalid_configuration, "reference refinement must be at least 2");
  ScaledField s0 = scale_transform(u0, lambda);

  EvolutionConfig ca = cfg;
  ca.t_end = s0.time_factor * t;
  EvolutionConfig cb = cfg;
  cb.t_end = t;
  Field a = evolve_to(u0, ca);
  Field b = evolve_to(s0.field, cb);

  EvolutionConfig ra = ca, rb = cb;
  ra.scheme = rb.scheme = Scheme::ifrk4;
  ra.dt = cfg.dt / reference_refine;
  rb.dt = cfg.dt / reference_refine;
  Field aref = evolve_to(u0, ra);
  Field bref = evolve_to(s0.field, rb);

  Field sa = scale_transform(a, lambda).field;
  Field saref = scale_transform(aref, lambda).field;

  CovarianceReport r;
  r.defect = std::sqrt(l2_mass(difference(sa, b)));
  r.error_direct = std::sqrt(l2_mass(difference(sa, saref)));
  r.error_scaled = std::sqrt(l2_mass(difference(b, bref)));
  return r;
}

}  // namespace nls4
