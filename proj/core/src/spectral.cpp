#include <algorithm>
#include <cmath>
#include <random>

#include "nls4/spectral.hpp"

namespace nls4 {

Spectrum apply_symbol(const Spectrum& s, const SymbolFn& sigma) {
  Spectrum out(s.grid);
  for (int i = 0; i < s.grid.M; ++i) {
    cplx m = sigma(s.grid.xi(i));
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
      fail(ErrorKind::numeric_domain, "symbol '" + sigma.tag + "' not finite at xi=" + std::to_string(s.grid.xi(i)));
    out.c[i] = m * s.c[i];
  }
  return out;
}

Field apply_symbol(const Field& f, const SymbolFn& sigma) {
  return to_physical(apply_symbol(to_spectrum(f), sigma));
}

SymbolFn abs_power_symbol(double alpha) {
  return {[alpha](double xi) -> cplx {
            double a = std::abs(xi);
            if (a == 0.0) return alpha == 0.0 ? 1.0 : 0.0;
            return std::pow(a, alpha);
          },
          "|xi|^" + std::to_string(alpha)};
}

SymbolFn constant_symbol(cplx value) {
  return {[value](double) { return value; }, "const"};
}

Field fractional_derivative(const Field& f, double alpha) {
  if (!(alpha >= 0.0)) fail(ErrorKind::invalid_configuration, "fractional derivative order must be >= 0");
  if (alpha == 0.0) return f;
  return apply_symbol(f, abs_power_symbol(alpha));
}

double sobolev_norm(const Spectrum& s, double sob, bool homogeneous) {
  double acc = 0.0;
  for (int i = 0; i < s.grid.M; ++i) {
    double xi = s.grid.xi(i);
    double w;
    if (homogeneous) {
      if (xi == 0.0) continue;
      w = std::pow(std::abs(xi), 2.0 * sob);
    } else {
      w = sob == 0.0 ? 1.0 : std::pow(1.0 + xi * xi, sob);
    }
    acc += w * std::norm(s.c[i]);
  }
  return std::sqrt(s.grid.L * acc);
}

double sobolev_norm(const Field& f, double sob, bool homogeneous) {
  return sobolev_norm(to_spectrum(f), sob, homogeneous);
}

double lebesgue_norm(const Field& f, double p) {
  if (!(p >= 1.0)) fail(ErrorKind::invalid_configuration, "Lebesgue exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.u) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& v : f.u) acc += std::norm(v);
  } else {
    for (const auto& v : f.u) acc += std::pow(std::abs(v), p);
  }
  return std::pow(acc * f.grid.dx(), 1.0 / p);
}

namespace {

double smooth_step_core(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double lp_phi(double r) {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  double a = smooth_step_core(2.0 - r);
  double b = smooth_step_core(r - 1.0);
  return a / (a + b);
}

double lp_multiplier(double xi, double N) {
  double r = std::abs(xi);
  if (N == 1.0) return lp_phi(r);
  return lp_phi(r / N) - lp_phi(2.0 * r / N);
}

namespace {

void check_dyadic(double N) {
  if (!(N >= 1.0)) fail(ErrorKind::invalid_configuration, "band index N must be a dyadic number >= 1");
  double e = std::log2(N);
  if (std::abs(e - std::round(e)) > 1e-12) fail(ErrorKind::invalid_configuration, "band index N must be dyadic");
}

}  // namespace

Spectrum project_band(const Spectrum& s, double N) {
  check_dyadic(N);
  Spectrum out(s.grid);
  for (int i = 0; i < s.grid.M; ++i) out.c[i] = lp_multiplier(s.grid.xi(i), N) * s.c[i];
  return out;
}

Field project_band(const Field& f, double N) { return to_physical(project_band(to_spectrum(f), N)); }

Field make_gaussian(const Grid& g, const GaussianSpec& spec) {
  if (!(spec.width > 0.0)) fail(ErrorKind::invalid_configuration, "gaussian width must be positive");
  double kmax = pi * g.M / g.L;
  if (std::abs(spec.carrier_k0 - g.carrier_xi()) >= kmax)
    fail(ErrorKind::resolution, "gaussian carrier is at or above the grid Nyquist frequency");
  Field f(g);
  const double kc = g.carrier_xi();
  for (int j = 0; j < g.M; ++j) {
    double x = g.x(j);
    double y = (x - spec.center) / spec.width;
    f.u[j] = spec.amplitude * std::exp(I * ((spec.carrier_k0 - kc) * x)) * std::exp(-y * y);
  }
  Spectrum s = to_spectrum(f);
  double peak = 0.0, edge = 0.0;
  const int band = std::max(1, g.M / 32);
  for (int i = 0; i < g.M; ++i) {
    double a = std::abs(s.c[i]);
    peak = std::max(peak, a);
    if (std::abs(g.k_of(i)) >= g.M / 2 - band) edge = std::max(edge, a);
  }
  if (edge > 1e-12 * peak)
    fail(ErrorKind::resolution, "gaussian spectrum at Nyquist is " + std::to_string(edge / peak) + " of peak");
  return f;
}

Field make_gaussian(const Grid& g, double A, double w, double k0, double x0) {
  return make_gaussian(g, GaussianSpec{A, w, k0, x0});
}

TailReport tails(const Field& f, const Spectrum& s) {
  TailReport r;
  double total = 0.0, hi = 0.0;
  for (int i = 0; i < s.grid.M; ++i) {
    double m = std::norm(s.c[i]);
    total += m;
    if (4 * std::abs(s.grid.k_of(i)) * 2 >= 3 * s.grid.M) hi += m;
  }
  r.spectral = total > 0.0 ? hi / total : 0.0;
  double tot_x = 0.0, edge = 0.0;
  for (int j = 0; j < f.grid.M; ++j) {
    double m = std::norm(f.u[j]);
    tot_x += m;
    if (std::abs(f.grid.x(j)) >= 0.45 * f.grid.L) edge += m;
  }
  r.boundary = tot_x > 0.0 ? edge / tot_x : 0.0;
  return r;
}

TailReport tails(const Field& f) { return tails(f, to_spectrum(f)); }

void require_tails(const Field& f, double tol, bool check_boundary) {
  TailReport r = tails(f);
  if (r.spectral > tol) fail(ErrorKind::resolution, "spectral tail " + std::to_string(r.spectral) + " exceeds guard");
  if (check_boundary && r.boundary > tol)
    fail(ErrorKind::resolution, "boundary tail " + std::to_string(r.boundary) + " exceeds guard");
}

double l2_mass(const Field& f) {
  double acc = 0.0;
  for (const auto& v : f.u) acc += std::norm(v);
  return acc * f.grid.dx();
}

double l2_mass(const Spectrum& s) {
  double acc = 0.0;
  for (const auto& v : s.c) acc += std::norm(v);
  return acc * s.grid.L;
}

Field difference(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) fail(ErrorKind::invalid_configuration, "difference of fields on different grids");
  Field d(a.grid);
  for (int j = 0; j < a.grid.M; ++j) d.u[j] = a.u[j] - b.u[j];
  return d;
}

Field random_field(const Grid& g, int K, double amplitude, std::uint64_t seed) {
  if (K < 0 || K >= g.M / 2) fail(ErrorKind::invalid_configuration, "random field band must lie below M/2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Spectrum s(g);
  for (int k = -K; k <= K; ++k) {
    const double a = nd(rng), b = nd(rng);
    const double r = static_cast<double>(k) / std::max(K, 1);
    s.at_k(k) = amplitude * cplx(a, b) / std::sqrt(2.0) / (1.0 + r * r);
  }
  return to_physical(s);
}

}  // namespace nls4
