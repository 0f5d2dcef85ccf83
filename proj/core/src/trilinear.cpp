#include <cmath>

#include "nls4/common.hpp"
#include "nls4/parallel.hpp"
#include "nls4/resonance.hpp"
#include "nls4/spectral.hpp"

namespace nls4 {

namespace {

int pow2_at_least(int n) {
  int m = 1;
  while (m < n) m *= 2;
  return m;
}

// (c + d)^4 - c^4 for envelope offset d, without cancellation.
double quartic_offset(double c, double d) { return d * (4.0 * c * c * c + d * (6.0 * c * c + d * (4.0 * c + d))); }

TrilinearRow trilinear_row(double N, const TrilinearConfig& cfg) {
  const int j = cfg.band_modes;
  const double Lf = 2.0 * pi * j * N;
  const double kc_real = static_cast<double>(j) * N * N;
  const auto kc = static_cast<std::int64_t>(std::llround(kc_real));
  if (std::abs(kc_real - static_cast<double>(kc)) > 1e-9 * kc_real)
    fail(ErrorKind::resolution, "band carrier is not on the lattice; use integer N");
  const int M = 8 * pow2_at_least(j + 1);
  const Grid gu = make_grid(Lf, M, kc), gv = make_grid(Lf, M, -kc);

  // u = w: band [N, N + 1/N] evolving with exp(-i t xi^4); v: band -[N, N + 1/N]
  // evolving with exp(+i t xi^4). The common factor exp(-+i t N^4) is dropped; it
  // does not change any modulus.
  Spectrum su(gu), sv(gv);
  for (int k = 0; k <= j; ++k) {
    su.at_k(k) = 1.0 / Lf;
    sv.at_k(-k) = 1.0 / Lf;
  }
  const double rhs = std::pow(sobolev_norm(su, cfg.s), 2) * sobolev_norm(sv, cfg.s);

  const int nt = cfg.time_samples;
  const double dt = 2.0 * cfg.t_max / (nt - 1);
  const Grid gp = make_grid(Lf, M, kc);
  double integral = 0.0;
  for (int it = 0; it < nt; ++it) {
    const double t = -cfg.t_max + dt * it;
    Spectrum a(gu), b(gv);
    for (int k = 0; k <= j; ++k) {
      const double d = 2.0 * pi * k / Lf;
      a.at_k(k) = su.at_k(k) * std::polar(1.0, -t * quartic_offset(N, d));
      b.at_k(-k) = sv.at_k(-k) * std::polar(1.0, t * quartic_offset(N, d));
    }
    const Field fu = to_physical(a), fv = to_physical(b);
    Field prod(gp);
    for (std::size_t i = 0; i < prod.u.size(); ++i) prod.u[i] = fu.u[i] * fv.u[i] * fu.u[i];
    const double n2 = std::pow(sobolev_norm(prod, cfg.s), 2);
    integral += (it == 0 || it == nt - 1 ? 0.5 : 1.0) * n2 * dt;
  }
  TrilinearRow row;
  row.N = N;
  row.lhs = std::sqrt(integral);
  row.rhs = rhs;
  row.ratio = row.lhs / row.rhs;
  return row;
}

}  // namespace

TrilinearResult trilinear_counterexample(const TrilinearConfig& cfg) {
  if (cfg.Ns.size() < 4) fail(ErrorKind::invalid_configuration, "trilinear sweep needs at least 4 values of N");
  if (cfg.band_modes < 4) fail(ErrorKind::resolution, "band must hold at least 4 lattice modes");
  if (cfg.time_samples < 3 || !(cfg.t_max > 0.0)) fail(ErrorKind::invalid_configuration, "bad time window");
  for (double N : cfg.Ns)
    if (!(N >= 1.0)) fail(ErrorKind::invalid_configuration, "trilinear sweep needs N >= 1");
  TrilinearResult res;
  res.rows.resize(cfg.Ns.size());
  parallel_for(cfg.Ns.size(), [&](std::size_t i) { res.rows[i] = trilinear_row(cfg.Ns[i], cfg); });
  std::vector<double> xs, ys;
  for (const auto& r : res.rows) {
    xs.push_back(r.N);
    ys.push_back(r.ratio);
  }
  res.fit = fit_loglog(xs, ys);
  res.predicted = -2.0 * cfg.s - 1.0;
  res.diverges = res.fit.slope > 0.15;
  return res;
}

}  // namespace nls4
