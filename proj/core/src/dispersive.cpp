#include <algorithm>
#include <cmath>

#include "nls4/common.hpp"
#include "nls4/dispersive.hpp"
#include "nls4/evolution.hpp"
#include "nls4/parallel.hpp"
#include "nls4/spectral.hpp"

namespace nls4 {

namespace {

// Free flow e^{i t d_x^4}: every mode picks up exp(i t xi^4).
Spectrum free_flow(const Spectrum& s, double t) { return linear_propagate(s, t, +1, Equation::quartic); }

double trapezoid_weight(int i, int n) { return (i == 0 || i == n - 1) ? 0.5 : 1.0; }

double effective_xi(const Spectrum& s) {
  std::vector<std::pair<double, double>> m;
  double total = 0.0;
  for (std::size_t i = 0; i < s.c.size(); ++i) {
    const double w = std::norm(s.c[i]);
    m.emplace_back(std::abs(s.grid.xi(static_cast<int>(i))), w);
    total += w;
  }
  if (!(total > 0.0)) return 0.0;
  std::sort(m.begin(), m.end());
  double tail = total;
  for (auto [xi, w] : m) {
    if (tail <= 1e-12 * total) return xi;
    tail -= w;
  }
  return m.back().first;
}

}  // namespace

Field spectral_bump(const Grid& g, double width) {
  if (g.carrier != 0) fail(ErrorKind::invalid_configuration, "spectral bump needs a carrier-free grid");
  if (!(width > 0.0) || width >= g.xi_max()) fail(ErrorKind::resolution, "bump width must be below the Nyquist frequency");
  Spectrum s(g);
  for (int i = 0; i < g.M; ++i) s.c[static_cast<std::size_t>(i)] = lp_phi(2.0 * std::abs(g.xi(i)) / width);
  Field f = to_physical(s);
  const double l1 = lebesgue_norm(f, 1.0);
  for (auto& v : f.u) v /= l1;
  return f;
}

DecayResult decay_fit(double alpha, const Field& datum, const std::vector<double>& ts, double min_phase) {
  if (alpha < 0.0 || alpha > 1.0) fail(ErrorKind::invalid_configuration, "decay_fit needs alpha in [0,1]");
  if (ts.empty()) fail(ErrorKind::invalid_configuration, "empty time sweep");
  const Spectrum s0 = to_spectrum(datum);
  DecayResult res;
  res.predicted = -(alpha + 1.0) / 4.0;
  res.xi_eff = effective_xi(s0);
  const double t_max = *std::max_element(ts.begin(), ts.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  const double spread = 4.0 * std::pow(res.xi_eff, 3) * std::abs(t_max);
  if (spread >= 0.25 * datum.grid.L)
    fail(ErrorKind::resolution, "wrap-around guard: support growth " + std::to_string(spread) +
                                    " exceeds L/4 = " + std::to_string(0.25 * datum.grid.L));
  const Spectrum sd = apply_symbol(s0, abs_power_symbol(alpha));
  res.rows.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    const double t = ts[i];
    DecayRow& r = res.rows[i];
    r.t = t;
    r.sup = lebesgue_norm(to_physical(free_flow(sd, t)), p_infinity);
    r.used = std::abs(t) * std::pow(res.xi_eff, 4) >= min_phase;
  });
  std::vector<double> xs, ys;
  for (const auto& r : res.rows)
    if (r.used) {
      xs.push_back(std::abs(r.t));
      ys.push_back(r.sup);
    }
  res.fit = fit_loglog(xs, ys);
  return res;
}

Field frequency_packet(const Grid& g, double N) {
  if (g.carrier != 0) fail(ErrorKind::invalid_configuration, "packets need a carrier-free grid");
  if (2.0 * N >= 0.75 * g.xi_max()) fail(ErrorKind::resolution, "packet frequency not resolved by the grid");
  Spectrum s(g);
  for (int i = 0; i < g.M; ++i) {
    const double xi = g.xi(i);
    if (xi > 0.0) s.c[static_cast<std::size_t>(i)] = lp_phi(xi / N) - lp_phi(2.0 * xi / N);
  }
  const double n = std::sqrt(l2_mass(s));
  for (auto& c : s.c) c /= n;
  return to_physical(s);
}

double bilinear_norm(const Field& f, const Field& g, double T, int snapshots) {
  if (!(f.grid == g.grid)) fail(ErrorKind::invalid_configuration, "bilinear_norm needs a common grid");
  if (snapshots < 3 || !(T > 0.0)) fail(ErrorKind::invalid_configuration, "bad bilinear time window");
  const Spectrum a = to_spectrum(f), b = to_spectrum(g);
  const double h = 2.0 * T / (snapshots - 1);
  const double dx = f.grid.dx();
  double acc = 0.0;
  for (int i = 0; i < snapshots; ++i) {
    const double t = -T + h * i;
    const Field u = to_physical(free_flow(a, t)), v = to_physical(free_flow(b, t));
    double sx = 0.0;
    for (std::size_t j = 0; j < u.u.size(); ++j) sx += std::norm(u.u[j] * v.u[j]);
    acc += trapezoid_weight(i, snapshots) * sx * dx * h;
  }
  return std::sqrt(acc);
}

BilinearResult bilinear_fit(const BilinearConfig& cfg) {
  const Grid g = make_grid(cfg.L, cfg.M);
  if (cfg.N2s.size() < 4) fail(ErrorKind::invalid_configuration, "bilinear sweep needs at least 4 values");
  for (double n2 : cfg.N2s) {
    if (cfg.enforce_separation && cfg.N1 > n2 / 8.0)
      fail(ErrorKind::invalid_configuration, "bilinear sweep needs N1 <= N2/8");
    if (2.0 * n2 >= 0.75 * g.xi_max()) fail(ErrorKind::resolution, "resolution guard: N2 too large for the grid");
  }
  const Field low = frequency_packet(g, cfg.N1);
  BilinearResult res;
  res.rows.resize(cfg.N2s.size());
  parallel_for(cfg.N2s.size(), [&](std::size_t i) {
    const double n2 = cfg.N2s[i];
    BilinearRow& r = res.rows[i];
    r.N2 = n2;
    r.window = cfg.window_c / (n2 * n2 * n2);
    r.value = bilinear_norm(low, frequency_packet(g, n2), r.window, cfg.snapshots);
  });
  std::vector<double> xs, ys;
  for (const auto& r : res.rows) {
    xs.push_back(r.N2);
    ys.push_back(r.value);
  }
  res.fit = fit_loglog(xs, ys);
  return res;
}

double local_smoothing_check(const Field& datum, double T, int snapshots, double beta) {
  if (snapshots < 3 || !(T > 0.0)) fail(ErrorKind::invalid_configuration, "bad smoothing time window");
  const double norm = std::sqrt(l2_mass(datum));
  if (norm == 0.0) return 0.0;
  const Spectrum s = apply_symbol(to_spectrum(datum), abs_power_symbol(beta));
  std::vector<double> acc(datum.u.size(), 0.0);
  const double h = 2.0 * T / (snapshots - 1);
  for (int i = 0; i < snapshots; ++i) {
    const Field u = to_physical(free_flow(s, -T + h * i));
    const double w = trapezoid_weight(i, snapshots) * h;
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += w * std::norm(u.u[j]);
  }
  return std::sqrt(*std::max_element(acc.begin(), acc.end())) / norm;
}

LocalSmoothingResult local_smoothing_sweep(const LocalSmoothingConfig& cfg) {
  const Grid g = make_grid(cfg.L, cfg.M);
  LocalSmoothingResult res;
  res.rows.resize(cfg.lambdas.size());
  for (double lam : cfg.lambdas)
    if (!(lam > 0.0) || 8.0 * lam >= 0.75 * g.xi_max())
      fail(ErrorKind::resolution, "smoothing family member not resolved by the grid");
  parallel_for(cfg.lambdas.size(), [&](std::size_t i) {
    const double lam = cfg.lambdas[i];
    // lambda^{1/2} phi(lambda x), phi = pi^{-1/4} exp(-x^2/2)
    const Field f = make_gaussian(g, std::sqrt(lam) * std::pow(pi, -0.25), std::sqrt(2.0) / lam, 0.0, 0.0);
    const double T = cfg.window / std::pow(lam, 4);
    res.rows[i] = {lam, local_smoothing_check(f, T, cfg.snapshots, cfg.derivative)};
  });
  std::vector<double> xs, ys;
  double lo = 1e300, hi = 0.0;
  for (const auto& r : res.rows) {
    xs.push_back(r.lambda);
    ys.push_back(r.ratio);
    lo = std::min(lo, r.ratio);
    hi = std::max(hi, r.ratio);
  }
  res.spread = hi / lo;
  if (xs.size() >= 4) res.fit = fit_loglog(xs, ys);
  return res;
}

}  // namespace nls4
