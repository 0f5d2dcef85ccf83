#include <algorithm>
#include <cmath>

#include "nls4/common.hpp"
#include "nls4/illposed.hpp"
#include "nls4/parallel.hpp"
#include "nls4/spectral.hpp"
#include "nls4/symmetries.hpp"

namespace nls4 {

namespace {

const double sqrt6 = std::sqrt(6.0);

// (N + d)^4 - N^4
double quartic_offset(double N, double d) { return d * (4.0 * N * N * N + d * (6.0 * N * N + d * (4.0 * N + d))); }

std::int64_t integer_carrier(double N, long long n) {
  const double kc = N * static_cast<double>(n);
  const auto k = static_cast<std::int64_t>(std::llround(kc));
  if (std::abs(kc - static_cast<double>(k)) > 1e-9 * std::max(1.0, kc))
    fail(ErrorKind::invalid_configuration, "carrier N must be an integer");
  return k;
}

EvolutionConfig quartic_config(double kappa_res, double dt, double t_end) {
  // (i d_t + d_x^4) U + kappa |U|^2 U = 0  <=>  i U_t = -U_xxxx - kappa |U|^2 U
  EvolutionConfig cfg;
  cfg.equation = Equation::quartic;
  cfg.orientation = +1;
  cfg.kappa = -kappa_res;
  cfg.scheme = Scheme::ifrk4;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.store_states = false;
  return cfg;
}

// Envelope coefficients on gx of e^{iN^4 t} (d_y^order v)(t, y + shift) with the
// profile spectrum vs on gy.
Spectrum lift(const Spectrum& vs, const Grid& gx, double N, double t, cplx factor, int order) {
  Spectrum out(gx);
  const double shift = 4.0 * N * N * t / sqrt6;
  const cplx gauge = std::polar(1.0, std::fmod(std::pow(N, 4) * t, 2.0 * pi));
  for (int i = 0; i < gx.M; ++i) {
    const double eta = vs.grid.xi(i);
    cplx d = 1.0;
    for (int r = 0; r < order; ++r) d *= I * eta;
    out.c[static_cast<std::size_t>(i)] =
        factor * gauge * d * std::polar(1.0, eta * shift) * vs.c[static_cast<std::size_t>(i)];
  }
  return out;
}

Field scaled_copy(const Field& f, const Grid& g, double lambda) {
  Field out(g);
  const double f2 = lambda * lambda;
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] = f2 * f.u[i];
  return out;
}

}  // namespace

std::pair<double, double> change_coords(double N, double t, double x) {
  if (!(N > 0.0)) fail(ErrorKind::invalid_configuration, "change_coords needs N > 0");
  return {t, (x + 4.0 * N * N * N * t) / (sqrt6 * N)};
}

Spectrum SolitonProfile::at(double s, const Grid& gy) const {
  Field f(gy);
  const cplx phase = std::polar(std::sqrt(2.0) * a_, -a_ * a_ * s);
  for (int j = 0; j < gy.M; ++j) {
    double acc = 0.0;
    for (int m = -1; m <= 1; ++m) acc += 1.0 / std::cosh(a_ * (gy.x(j) + m * gy.L));
    f.u[static_cast<std::size_t>(j)] = phase * acc;
  }
  return to_spectrum(f);
}

SolverProfile::SolverProfile(Field v0, double kappa, double dt) : fixed_(v0.grid), kappa_(kappa), dt_(dt) {
  if (!(dt > 0.0)) fail(ErrorKind::invalid_configuration, "profile dt must be positive");
  cache_[{v0.grid.L, v0.grid.M}].emplace(0.0, to_spectrum(v0));
}

SolverProfile::SolverProfile(std::function<cplx(double)> v0, double kappa, double dt)
    : v0_fn_(std::move(v0)), kappa_(kappa), dt_(dt) {
  if (!(dt > 0.0)) fail(ErrorKind::invalid_configuration, "profile dt must be positive");
  if (!v0_fn_) fail(ErrorKind::invalid_configuration, "missing initial profile");
}

std::map<double, Spectrum>& SolverProfile::cache_for(const Grid& gy) const {
  if (gy.carrier != 0) fail(ErrorKind::invalid_configuration, "profile grid must not carry a carrier");
  if (fixed_ && !(gy == *fixed_)) fail(ErrorKind::invalid_configuration, "profile grid mismatch");
  auto& c = cache_[{gy.L, gy.M}];
  if (c.empty()) {
    Field f(gy);
    for (int j = 0; j < gy.M; ++j) f.u[static_cast<std::size_t>(j)] = v0_fn_(gy.x(j));
    c.emplace(0.0, to_spectrum(f));
  }
  return c;
}

Spectrum SolverProfile::at(double s, const Grid& gy) const {
  if (s < 0.0) fail(ErrorKind::invalid_configuration, "profile time must be >= 0");
  std::lock_guard<std::mutex> lock(mu_);
  auto& cache = cache_for(gy);
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  auto base = std::prev(cache.upper_bound(s));
  EvolutionConfig cfg;
  cfg.equation = Equation::cubic;
  cfg.orientation = +1;  // i v_s = v_yy - kappa |v|^2 v
  cfg.kappa = -kappa_;
  cfg.scheme = Scheme::ifrk4;
  cfg.t_end = s - base->first;
  cfg.dt = std::min(dt_, cfg.t_end);
  Spectrum out = to_spectrum(evolve_to(to_physical(base->second), cfg));
  if (cache.size() > 4096) cache.erase(std::next(cache.begin()));
  cache.emplace(s, out);
  return out;
}

ApproxGrids approx_grids(const ApproxParams& p) {
  if (!(p.N >= 1.0)) fail(ErrorKind::invalid_configuration, "carrier N must be >= 1");
  if (!(p.L_profile > 0.0)) fail(ErrorKind::invalid_configuration, "profile length must be positive");
  const long long n = std::llround(sqrt6 * p.N * p.L_profile / (2.0 * pi));
  if (n < 1) fail(ErrorKind::resolution, "profile domain too short for the carrier");
  ApproxGrids g;
  g.x = make_grid(2.0 * pi * static_cast<double>(n), p.M, integer_carrier(p.N, n));
  g.y = make_grid(g.x.L / (sqrt6 * p.N), p.M);
  return g;
}

Field build_uap(const ApproxParams& p, double t) {
  if (!p.profile) fail(ErrorKind::invalid_configuration, "missing profile");
  const ApproxGrids g = approx_grids(p);
  const Spectrum vs = p.profile->at(t, g.y);
  const TailReport tr = tails(to_physical(vs), vs);
  if (tr.spectral > 1e-10) fail(ErrorKind::resolution, "interpolation out of resolved band: profile spectrum reaches the grid edge");
  return to_physical(lift(vs, g.x, p.N, t, 1.0, 0));
}

ResidualFields residual_fields(const ApproxParams& p, double t, double dt) {
  if (!p.profile) fail(ErrorKind::invalid_configuration, "missing profile");
  if (!(dt > 0.0) || t - dt < 0.0) fail(ErrorKind::invalid_configuration, "residual needs 0 <= t - dt");
  const ApproxGrids g = approx_grids(p);
  const double N = p.N;
  const Spectrum v = p.profile->at(t, g.y);
  const Spectrum vp = p.profile->at(t + dt, g.y), vm = p.profile->at(t - dt, g.y);
  const TailReport tr = tails(to_physical(v), v);
  if (tr.spectral > 1e-10) fail(ErrorKind::resolution, "unresolved derivative: profile spectrum reaches the grid edge");

  Spectrum vs_dt(g.y);
  for (std::size_t i = 0; i < v.c.size(); ++i) vs_dt.c[i] = (vp.c[i] - vm.c[i]) / (2.0 * dt);

  const Spectrum a = lift(v, g.x, N, t, 1.0, 0);
  // i d_t U = e^{..}[-N^4 v + i v_s + i (4N^2/sqrt6) v_y]
  const Spectrum ivs = lift(vs_dt, g.x, N, t, I, 0);
  const Spectrum ivy = lift(v, g.x, N, t, I * 4.0 * N * N / sqrt6, 1);
  const Field u = to_physical(a);
  Field cub(g.x);
  for (std::size_t j = 0; j < u.u.size(); ++j) cub.u[j] = std::norm(u.u[j]) * u.u[j];
  const Spectrum cubs = to_spectrum(cub);

  Spectrum direct(g.x);
  const double kappa = p.profile->kappa();
  for (int i = 0; i < g.x.M; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double d = g.x.xi(i) - N;  // envelope frequency
    // -N^4 a + xi^4 a combined as ((N+d)^4 - N^4) a
    direct.c[k] = quartic_offset(N, d) * a.c[k] + ivs.c[k] + ivy.c[k] + kappa * cubs.c[k];
  }

  ResidualFields r;
  r.E1 = to_physical(lift(v, g.x, N, t, 1.0 / (36.0 * std::pow(N, 4)), 4));
  r.E2 = to_physical(lift(v, g.x, N, t, 4.0 * I / (std::pow(6.0, 1.5) * N * N), 3));
  r.direct = to_physical(direct);
  Field sum(g.x), gap(g.x);
  for (std::size_t j = 0; j < sum.u.size(); ++j) {
    sum.u[j] = r.E1.u[j] + r.E2.u[j];
    gap.u[j] = r.direct.u[j] - sum.u[j];
  }
  const double ns = std::sqrt(l2_mass(sum));
  r.defect = ns > 0.0 ? std::sqrt(l2_mass(gap)) / ns : std::sqrt(l2_mass(gap));
  return r;
}

double modulation_norm(double A, double M, double tau, double x0, double s, double L, int grid_M) {
  if (!(tau > 0.0)) fail(ErrorKind::invalid_configuration, "tau must be positive");
  const double kc_real = M * L / (2.0 * pi);
  const auto kc = static_cast<std::int64_t>(std::llround(kc_real));
  if (std::abs(kc_real - static_cast<double>(kc)) > 1e-6)
    fail(ErrorKind::resolution, "modulation frequency is not on the lattice");
  const Grid g = make_grid(L, grid_M, kc);
  return sobolev_norm(make_gaussian(g, A, tau, M, x0), s);
}

ModulationReport modulation_norm_check(const ModulationConfig& cfg) {
  ModulationReport rep;
  auto sweep = [&](ModulationSweep& sw, const std::vector<double>& vals, double predicted, int which) {
    sw.values = vals;
    sw.predicted = predicted;
    sw.norms.assign(vals.size(), 0.0);
    parallel_for(vals.size(), [&](std::size_t i) {
      double A = cfg.A, M = cfg.M, tau = cfg.tau;
      (which == 0 ? M : which == 1 ? tau : A) = vals[i];
      sw.norms[i] = modulation_norm(A, M, tau, cfg.x0, cfg.s, cfg.L, cfg.grid_M);
    });
    for (double v : vals) {
      const double M = which == 0 ? v : cfg.M, tau = which == 1 ? v : cfg.tau;
      if (M * tau < 1.0) sw.hypothesis_ok = false;
    }
    std::vector<double> xs(vals.size());
    std::transform(vals.begin(), vals.end(), xs.begin(), [](double v) { return std::abs(v); });
    sw.fit = fit_loglog(xs, sw.norms);
  };
  sweep(rep.M_sweep, cfg.Ms, cfg.s, 0);
  sweep(rep.tau_sweep, cfg.taus, 0.5, 1);
  sweep(rep.A_sweep, cfg.As, 1.0, 2);
  return rep;
}

ErrorDecayResult error_decay_experiment(const ErrorDecayConfig& cfg) {
  if (cfg.Ns.size() < 4) fail(ErrorKind::invalid_configuration, "error decay needs at least 4 values of N");
  if (cfg.records < 1) fail(ErrorKind::invalid_configuration, "records must be positive");
  std::shared_ptr<const ProfileTrajectory> prof = cfg.profile;
  if (!prof) prof = std::make_shared<SolitonProfile>(cfg.a);
  ErrorDecayResult res;
  res.rows.resize(cfg.Ns.size());
  parallel_for(cfg.Ns.size(), [&](std::size_t i) {
    ApproxParams p;
    p.N = cfg.Ns[i];
    p.L_profile = cfg.L_profile;
    p.M = cfg.M;
    p.profile = prof;
    const Field u0 = build_uap(p, 0.0);
    EvolutionConfig ec = quartic_config(prof->kappa(), cfg.dt, cfg.t_end);
    const long long steps = static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
    ec.record_stride = static_cast<int>(std::max<long long>(1, steps / cfg.records));
    ErrorDecayRow& row = res.rows[i];
    row.N = p.N;
    row.uap_norm = sobolev_norm(u0, cfg.s);
    bool first = true;
    evolve(u0, ec, [&](double t, const Spectrum& s) {
      const Field diff = difference(to_physical(s), build_uap(p, t));
      const double e = sobolev_norm(diff, cfg.s);
      if (first) {
        row.error_at_zero = e;
        first = false;
      }
      row.sup_error = std::max(row.sup_error, e);
    });
  });
  std::vector<double> xs, ys;
  for (const auto& r : res.rows) {
    xs.push_back(r.N);
    ys.push_back(r.sup_error);
  }
  res.fit = fit_loglog(xs, ys);
  return res;
}

SeparationReport separation_experiment(const SeparationConfig& cfg) {
  if (cfg.a < 0.5 || cfg.a > 2.0 || cfg.a_prime < 0.5 || cfg.a_prime > 2.0)
    fail(ErrorKind::invalid_configuration, "soliton amplitudes must lie in [1/2, 2]");
  if (!(cfg.s > -1.5))
    fail(ErrorKind::invalid_configuration, "separation needs -3/2 < s");
  SeparationReport rep;
  rep.s = cfg.s;
  rep.N = cfg.N;
  rep.in_illposed_range = cfg.s > -15.0 / 14.0 && cfg.s < -0.5;
  rep.lambda = std::pow(cfg.N, -(cfg.s + 0.5) / (cfg.s + 1.5));
  rep.decoherence_time =
      cfg.a == cfg.a_prime ? 0.0 : pi / std::abs(cfg.a * cfg.a - cfg.a_prime * cfg.a_prime);
  const double lam = rep.lambda, lam4 = std::pow(lam, 4);

  ApproxParams p[2];
  for (int j = 0; j < 2; ++j) {
    p[j].N = cfg.N;
    p[j].L_profile = cfg.L_profile;
    p[j].M = cfg.M;
    p[j].profile = std::make_shared<SolitonProfile>(j == 0 ? cfg.a : cfg.a_prime);
  }
  const Field ua0 = build_uap(p[0], 0.0), ub0 = build_uap(p[1], 0.0);
  const Field sa0 = scale_transform(ua0, lam).field, sb0 = scale_transform(ub0, lam).field;
  const Grid gs = sa0.grid;

  const double t_end = cfg.T_profile / lam4;
  const double dt = cfg.dt_profile / lam4;
  const long long steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  EvolutionConfig ec = quartic_config(-1.0, dt, t_end);
  ec.record_stride = static_cast<int>(std::max<long long>(1, steps / std::max(1, cfg.records)));

  std::vector<double> times[2];
  std::vector<Field> states[2];
  const Field* init[2] = {&sa0, &sb0};
  parallel_for(2, [&](std::size_t j) {
    evolve(*init[j], ec, [&](double t, const Spectrum& s) {
      times[j].push_back(t);
      states[j].push_back(to_physical(s));
    });
  });
  if (times[0].size() != times[1].size()) fail(ErrorKind::aborted_run, "separation runs recorded different times");

  rep.norm1 = sobolev_norm(sa0, cfg.s);
  rep.norm2 = sobolev_norm(sb0, cfg.s);
  rep.epsilon = std::max(rep.norm1, rep.norm2);
  rep.triangle_slack = 1e300;
  for (std::size_t r = 0; r < times[0].size(); ++r) {
    const double t = times[0][r];
    SeparationRecord rec;
    rec.t = t;
    const Field apa = scaled_copy(build_uap(p[0], lam4 * t), gs, lam);
    const Field apb = scaled_copy(build_uap(p[1], lam4 * t), gs, lam);
    rec.distance = sobolev_norm(difference(states[0][r], states[1][r]), cfg.s);
    rec.distance_ap = sobolev_norm(difference(apa, apb), cfg.s);
    rec.error1 = sobolev_norm(difference(states[0][r], apa), cfg.s);
    rec.error2 = sobolev_norm(difference(states[1][r], apb), cfg.s);
    rep.triangle_slack = std::min(rep.triangle_slack, rec.distance - (rec.distance_ap - rec.error1 - rec.error2));
    if (r == 0) rep.initial_distance = rec.distance;
    if (rec.distance > rep.sup_distance) {
      rep.sup_distance = rec.distance;
      rep.time_of_max = t;
    }
    rep.records.push_back(rec);
  }
  rep.delta = rep.initial_distance;
  rep.profile_time_of_max = lam4 * rep.time_of_max;
  return rep;
}

}  // namespace nls4
