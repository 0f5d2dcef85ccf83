#include <algorithm>
#include <cmath>

#include "nls4/evolution.hpp"
#include "nls4/symmetries.hpp"

namespace nls4 {

namespace {

void coeffs_to_samples(const CVec& c, CVec& u) {
  u = c;
  const int n = static_cast<int>(u.size());
  for (int i = 1; i < n; i += 2) u[i] = -u[i];
  fft_inplace(u, +1);
}

void samples_to_coeffs(CVec& u) {
  const int n = static_cast<int>(u.size());
  fft_inplace(u, -1);
  const double inv = 1.0 / n;
  for (int i = 0; i < n; ++i) u[i] *= (i & 1) ? -inv : inv;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

double dispersion(Equation eq, double xi) {
  double x2 = xi * xi;
  return eq == Equation::quartic ? x2 * x2 : x2;
}

void validate(const EvolutionConfig& cfg, const Grid& g) {
  if (cfg.orientation != 1 && cfg.orientation != -1)
    fail(ErrorKind::invalid_configuration, "orientation must be +1 or -1");
  if (!std::isfinite(cfg.kappa)) fail(ErrorKind::invalid_configuration, "kappa must be finite");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) fail(ErrorKind::invalid_configuration, "dt must be positive");
  if (!(cfg.t_end > 0.0)) fail(ErrorKind::invalid_configuration, "t_end must be positive");
  if (cfg.dt > cfg.t_end * (1.0 + 1e-12)) fail(ErrorKind::invalid_configuration, "dt must not exceed t_end");
  if (cfg.record_stride < 1) fail(ErrorKind::invalid_configuration, "record_stride must be positive");
  if (cfg.mode_cutoff < 0 || cfg.mode_cutoff >= g.M / 2)
    fail(ErrorKind::invalid_configuration, "mode_cutoff must lie in [0, M/2)");
  if (cfg.mode_cutoff > 0 && cfg.scheme != Scheme::ifrk4)
    fail(ErrorKind::invalid_configuration, "Galerkin truncation requires the ifrk4 scheme");
  double phase = dispersion(cfg.equation, g.xi_max()) * cfg.dt;
  if (!std::isfinite(phase)) fail(ErrorKind::numeric_domain, "linear phase per step is not finite");
}

Spectrum linear_propagate(const Spectrum& s, double t, int orientation, Equation eq) {
  Spectrum out(s.grid);
  for (int i = 0; i < s.grid.M; ++i)
    out.c[i] = std::polar(1.0, orientation * t * dispersion(eq, s.grid.xi(i))) * s.c[i];
  return out;
}

Field linear_propagate_4nls(const Field& f, double t, int orientation) {
  if (t == 0.0) return f;
  return to_physical(linear_propagate(to_spectrum(f), t, orientation, Equation::quartic));
}

Field linear_propagate_nls(const Field& f, double t, int orientation) {
  if (t == 0.0) return f;
  return to_physical(linear_propagate(to_spectrum(f), t, orientation, Equation::cubic));
}

Field nonlinear_substep(const Field& f, double dt, double kappa) {
  Field out(f.grid);
  for (int j = 0; j < f.grid.M; ++j) out.u[j] = f.u[j] * std::polar(1.0, -kappa * std::norm(f.u[j]) * dt);
  return out;
}

Stepper::Stepper(const Grid& g, const EvolutionConfig& cfg) : grid_(g), cfg_(cfg) {
  validate(cfg, g);
  omega_.resize(g.M);
  for (int i = 0; i < g.M; ++i) omega_[i] = dispersion(cfg.equation, g.xi(i));
  if (cfg.mode_cutoff > 0) {
    pad_ = next_pow2(4 * cfg.mode_cutoff + 2);
    padbuf_.assign(pad_, cplx{});
  }
  const auto M = static_cast<std::size_t>(g.M);
  half_.resize(M);
  full_.resize(M);
  a_.resize(M);
  b_.resize(M);
  cc_.resize(M);
  d_.resize(M);
  tmp_.resize(M);
}

void Stepper::refresh_phases(double dt) {
  if (dt == phase_dt_) return;
  const double o = cfg_.orientation;
  for (int i = 0; i < grid_.M; ++i) {
    half_[i] = std::polar(1.0, o * omega_[i] * 0.5 * dt);
    full_[i] = std::polar(1.0, o * omega_[i] * dt);
  }
  phase_dt_ = dt;
}

void Stepper::project(CVec& c) const {
  if (cfg_.mode_cutoff <= 0) return;
  for (int i = 0; i < grid_.M; ++i)
    if (std::abs(grid_.k_of(i)) > cfg_.mode_cutoff) c[i] = 0.0;
}

void Stepper::nonlinear_rhs(const CVec& c, CVec& out) {
  const cplx factor = -I * cfg_.kappa;
  if (pad_ == 0) {
    coeffs_to_samples(c, work_);
    for (auto& v : work_) v *= std::norm(v);
    samples_to_coeffs(work_);
    out.resize(work_.size());
    for (std::size_t i = 0; i < work_.size(); ++i) out[i] = factor * work_[i];
    return;
  }
  const int K = cfg_.mode_cutoff;
  std::fill(padbuf_.begin(), padbuf_.end(), cplx{});
  for (int k = -K; k <= K; ++k) padbuf_[k >= 0 ? k : k + pad_] = c[grid_.slot_of(k)];
  for (int i = 1; i < pad_; i += 2) padbuf_[i] = -padbuf_[i];
  fft_inplace(padbuf_, +1);
  for (auto& v : padbuf_) v *= std::norm(v);
  samples_to_coeffs(padbuf_);
  out.assign(static_cast<std::size_t>(grid_.M), cplx{});
  for (int k = -K; k <= K; ++k) out[grid_.slot_of(k)] = factor * padbuf_[k >= 0 ? k : k + pad_];
}

void Stepper::strang(CVec& c, double dt) {
  refresh_phases(dt);
  for (int i = 0; i < grid_.M; ++i) c[i] *= half_[i];
  coeffs_to_samples(c, work_);
  const double kappa = cfg_.kappa;
  for (auto& v : work_) v *= std::polar(1.0, -kappa * std::norm(v) * dt);
  samples_to_coeffs(work_);
  for (int i = 0; i < grid_.M; ++i) c[i] = work_[i] * half_[i];
}

void Stepper::ifrk4(CVec& c, double dt) {
  refresh_phases(dt);
  const int M = grid_.M;
  const double h = dt;
  nonlinear_rhs(c, a_);
  for (int i = 0; i < M; ++i) tmp_[i] = half_[i] * (c[i] + 0.5 * h * a_[i]);
  nonlinear_rhs(tmp_, b_);
  for (int i = 0; i < M; ++i) tmp_[i] = half_[i] * c[i] + 0.5 * h * b_[i];
  nonlinear_rhs(tmp_, cc_);
  for (int i = 0; i < M; ++i) tmp_[i] = full_[i] * c[i] + h * half_[i] * cc_[i];
  nonlinear_rhs(tmp_, d_);
  for (int i = 0; i < M; ++i)
    c[i] = full_[i] * c[i] + (h / 6.0) * (full_[i] * a_[i] + 2.0 * half_[i] * (b_[i] + cc_[i]) + d_[i]);
}

void Stepper::step(CVec& c, double dt) {
  if (cfg_.scheme == Scheme::strang) {
    strang(c, dt);
  } else {
    project(c);
    ifrk4(c, dt);
  }
}

void Stepper::steps(CVec& c, double dt, long long n) {
  for (long long i = 0; i < n; ++i) step(c, dt);
}

Field strang_step(const Field& f, const EvolutionConfig& cfg) {
  EvolutionConfig c = cfg;
  c.scheme = Scheme::strang;
  c.mode_cutoff = 0;
  Stepper st(f.grid, c);
  Spectrum s = to_spectrum(f);
  st.step(s.c, cfg.dt);
  return to_physical(s);
}

Field ifrk4_step(const Field& f, const EvolutionConfig& cfg) {
  EvolutionConfig c = cfg;
  c.scheme = Scheme::ifrk4;
  Stepper st(f.grid, c);
  Spectrum s = to_spectrum(f);
  st.step(s.c, cfg.dt);
  return to_physical(s);
}

Spectrum galerkin_rhs(const Spectrum& s, const EvolutionConfig& cfg, int K) {
  const Grid& g = s.grid;
  if (K < 1 || K >= g.M / 2) fail(ErrorKind::invalid_configuration, "Galerkin cutoff K must lie in [1, M/2)");
  Spectrum out(g);
  std::vector<cplx> c(2 * K + 1);
  for (int k = -K; k <= K; ++k) c[k + K] = s.at_k(k);
  for (int k = -K; k <= K; ++k) {
    cplx acc = 0.0;
    for (int k1 = -K; k1 <= K; ++k1) {
      for (int k2 = -K; k2 <= K; ++k2) {
        int k3 = k - k1 + k2;
        if (k3 < -K || k3 > K) continue;
        acc += c[k1 + K] * std::conj(c[k2 + K]) * c[k3 + K];
      }
    }
    double w = dispersion(cfg.equation, g.xi_of_k(k));
    out.at_k(k) = I * (cfg.orientation * w) * c[k + K] - I * cfg.kappa * acc;
  }
  return out;
}

namespace {

void record_point(TrajectoryRecord& rec, const EvolutionConfig& cfg, double t, const Spectrum& s) {
  Field f = to_physical(s);
  rec.times.push_back(t);
  ConservedReport cr = hamiltonian(f, s, cfg.kappa, cfg.orientation, cfg.equation);
  rec.mass.push_back(cr.mass);
  rec.hamiltonian.push_back(cr.hamiltonian);
  std::vector<double> ns;
  ns.reserve(cfg.sobolev_indices.size());
  for (double sob : cfg.sobolev_indices) ns.push_back(sobolev_norm(s, sob));
  rec.norms.push_back(std::move(ns));
  rec.tails.push_back(tails(f, s));
  if (cfg.store_states) rec.states.push_back(std::move(f));
}

}  // namespace

TrajectoryRecord evolve(const Field& f0, const EvolutionConfig& cfg, const Observer& observer) {
  validate(cfg, f0.grid);
  check_finite(f0, "initial data");
  Stepper st(f0.grid, cfg);
  Spectrum s = to_spectrum(f0);
  st.project(s.c);

  TrajectoryRecord rec;
  rec.sobolev_indices = cfg.sobolev_indices;
  if (cfg.tail_guard) {
    TailReport tr = tails(f0, s);
    if (tr.spectral > cfg.start_tail_tol)
      fail(ErrorKind::resolution, "initial spectral tail " + std::to_string(tr.spectral) + " exceeds guard");
  }
  const long long n = std::max<long long>(1, static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  const double dt = cfg.t_end / static_cast<double>(n);
  rec.dt_used = dt;

  record_point(rec, cfg, 0.0, s);
  if (observer) observer(0.0, s);
  for (long long i = 1; i <= n; ++i) {
    st.step(s.c, dt);
    if (i % cfg.record_stride != 0 && i != n) continue;
    const double t = (i == n) ? cfg.t_end : static_cast<double>(i) * dt;
    record_point(rec, cfg, t, s);
    if (observer) observer(t, s);
    const TailReport& tr = rec.tails.back();
    bool finite = std::isfinite(rec.mass.back());
    if (!finite || (cfg.tail_guard && tr.spectral > cfg.run_tail_tol)) {
      rec.complete = false;
      rec.status = finite ? "aborted: spectral tail guard" : "aborted: non-finite state";
      throw AbortedRun(rec.status + " at t=" + std::to_string(t), std::move(rec));
    }
  }
  return rec;
}

Field evolve_to(const Field& f0, const EvolutionConfig& cfg) {
  EvolutionConfig c = cfg;
  c.store_states = false;
  const long long n = std::max<long long>(1, static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9)));
  c.record_stride = static_cast<int>(std::min<long long>(n, 1 << 30));
  validate(c, f0.grid);
  check_finite(f0, "initial data");
  Stepper st(f0.grid, c);
  Spectrum s = to_spectrum(f0);
  st.project(s.c);
  if (c.tail_guard) {
    TailReport tr = tails(f0, s);
    if (tr.spectral > c.start_tail_tol)
      fail(ErrorKind::resolution, "initial spectral tail " + std::to_string(tr.spectral) + " exceeds guard");
  }
  st.steps(s.c, cfg.t_end / static_cast<double>(n), n);
  Field out = to_physical(s);
  check_finite(out, "final state");
  if (c.tail_guard) {
    TailReport tr = tails(out, s);
    if (tr.spectral > c.run_tail_tol) fail(ErrorKind::aborted_run, "spectral tail guard tripped");
  }
  return out;
}

}  // namespace nls4
