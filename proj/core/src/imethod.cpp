#include <algorithm>
#include <cmath>

#include "nls4/imethod.hpp"

namespace nls4 {

void validate(const IMethodParams& p) {
  if (!(p.N >= 1.0) || !std::isfinite(p.N)) fail(ErrorKind::invalid_configuration, "I-method N must be >= 1");
  if (p.s > 0.0 || !std::isfinite(p.s)) fail(ErrorKind::invalid_configuration, "I-method s must be <= 0");
}

namespace {

double interp_shape(Interp kind, double t) {
  double t2 = t * t, t3 = t2 * t;
  if (kind == Interp::log_quintic) return 6.0 * t3 - 8.0 * t3 * t + 3.0 * t3 * t2;
  return 2.0 * t2 - t3;
}

}  // namespace

double m_squared(const IMethodParams& p, double xi) {
  double a = std::abs(xi);
  if (a <= p.N) return 1.0;
  if (a >= 2.0 * p.N) return std::pow(a / p.N, 2.0 * p.s);
  double t = std::log2(a / p.N);
  return std::exp(2.0 * p.s * std::log(2.0) * interp_shape(p.interp, t));
}

double m_value(const IMethodParams& p, double xi) {
  double a = std::abs(xi);
  if (a <= p.N) return 1.0;
  if (a >= 2.0 * p.N) return std::pow(a / p.N, p.s);
  double t = std::log2(a / p.N);
  return std::exp(p.s * std::log(2.0) * interp_shape(p.interp, t));
}

SymbolFn i_multiplier(const IMethodParams& p) {
  validate(p);
  return {[p](double xi) -> cplx { return m_value(p, xi); },
          "m[N=" + std::to_string(p.N) + ",s=" + std::to_string(p.s) + "]"};
}

Spectrum apply_I(const Spectrum& s, const IMethodParams& p) { return apply_symbol(s, i_multiplier(p)); }
Field apply_I(const Field& f, const IMethodParams& p) { return to_physical(apply_I(to_spectrum(f), p)); }

double energy2(const Spectrum& s, const IMethodParams& p) {
  validate(p);
  double acc = 0.0;
  for (int i = 0; i < s.grid.M; ++i) acc += m_squared(p, s.grid.xi(i)) * std::norm(s.c[i]);
  return s.grid.L * acc;
}

double energy2(const Field& f, const IMethodParams& p) { return energy2(to_spectrum(f), p); }

cplx symbol_alpha4(double x1, double x2, double x3, double x4) {
  auto q = [](double x) { return x * x * x * x; };
  return I * (q(x1) - q(x2) + q(x3) - q(x4));
}

double symbol_M4(double x1, double x2, double x3, double x4, const IMethodParams& p) {
  return 0.5 * (m_squared(p, x1) - m_squared(p, x2) + m_squared(p, x3) - m_squared(p, x4));
}

namespace {

void require_hyperplane(const double* x, int n) {
  double sum = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += x[i];
    scale = std::max(scale, std::abs(x[i]));
  }
  if (std::abs(sum) > hyperplane_tol * std::max(scale, 1e-300) && std::abs(sum) > 0.0)
    fail(ErrorKind::off_hyperplane, "frequencies do not sum to zero");
}

}  // namespace

cplx symbol_sigma4(double x1, double x2, double x3, double x4, const IMethodParams& p, FlowSign sign) {
  const double x[4] = {x1, x2, x3, x4};
  require_hyperplane(x, 4);
  double scale = std::max({std::abs(x1), std::abs(x2), std::abs(x3), std::abs(x4)});
  double m4 = symbol_M4(x1, x2, x3, x4, p);
  double f1 = x1 + x2, f2 = x1 + x4;
  double f3 = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4 + 2.0 * (x1 + x3) * (x1 + x3);
  const double tol = 1e-12 * std::max(scale, 1.0);
  if (std::abs(f1) <= tol || std::abs(f2) <= tol || f3 == 0.0) {
    if (std::abs(m4) <= 1e-12) return 0.0;
    fail(ErrorKind::singularity, "alpha_4 vanishes while M_4 does not");
  }
  double R = f1 * f2 * f3;
  return -sign.kappa * sign.orientation * m4 / R;
}

cplx symbol_M6(const double* xi, const IMethodParams& p, FlowSign sign) {
  require_hyperplane(xi, 6);
  return I * symbol_sigma4(xi[0], xi[1], xi[2], xi[3] + xi[4] + xi[5], p, sign);
}

Energy4Evaluator::Energy4Evaluator(const Grid& g, const IMethodParams& p, int K, FlowSign sign)
    : grid_(g), p_(p), K_(K) {
  validate(p);
  if (g.carrier != 0) fail(ErrorKind::invalid_configuration, "modified energies need a carrier-free grid");
  if (K < 1 || K >= g.M / 2) fail(ErrorKind::invalid_configuration, "mode cutoff K must lie in [1, M/2)");
  const int W = 2 * K + 1;
  const double d = g.dxi();
  sigma_.assign(static_cast<std::size_t>(W) * W * W, 0.0);
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2)
      for (int k3 = -K; k3 <= K; ++k3) {
        int k4 = -(k1 + k2 + k3);
        if (k4 < -K || k4 > K) continue;
        cplx sg = symbol_sigma4(k1 * d, k2 * d, k3 * d, k4 * d, p, sign);
        sigma_[(static_cast<std::size_t>(k1 + K) * W + (k2 + K)) * W + (k3 + K)] = sg.real();
      }
  msq_.resize(g.M);
  for (int i = 0; i < g.M; ++i) msq_[i] = m_squared(p, g.xi(i));
}

double Energy4Evaluator::energy2(const Spectrum& s) const {
  double acc = 0.0;
  for (int i = 0; i < s.grid.M; ++i) acc += msq_[i] * std::norm(s.c[i]);
  return s.grid.L * acc;
}

cplx Energy4Evaluator::correction(const Spectrum& s) const {
  if (!(s.grid == grid_)) fail(ErrorKind::invalid_configuration, "spectrum grid differs from evaluator grid");
  const int K = K_, W = 2 * K + 1;
  std::vector<cplx> a(W), b(W);
  for (int k = -K; k <= K; ++k) {
    a[k + K] = s.at_k(k);
    b[k + K] = std::conj(s.at_k(-k));
  }
  std::vector<cplx> parts(W);
  parallel_for(static_cast<std::size_t>(W), [&](std::size_t i1) {
    const int k1 = static_cast<int>(i1) - K;
    cplx acc = 0.0;
    for (int k2 = -K; k2 <= K; ++k2) {
      const cplx a12 = a[i1] * b[k2 + K];
      const double* row = &sigma_[(i1 * W + (k2 + K)) * W];
      // k4 = -(k1+k2+k3) must stay in range
      int lo = std::max(-K, -K - k1 - k2), hi = std::min(K, K - k1 - k2);
      cplx inner = 0.0;
      for (int k3 = lo; k3 <= hi; ++k3) {
        int k4 = -(k1 + k2 + k3);
        inner += row[k3 + K] * (a[k3 + K] * b[k4 + K]);
      }
      acc += a12 * inner;
    }
    parts[i1] = acc;
  });
  return s.grid.L * detail::pairwise_sum(parts);
}

double Energy4Evaluator::energy4(const Spectrum& s) const {
  double e2 = energy2(s);
  cplx corr = correction(s);
  if (std::abs(corr.imag()) > 1e-10 * std::max(std::abs(e2 + corr.real()), 1e-300))
    fail(ErrorKind::numeric_domain, "Lambda_4(sigma_4) has a non-negligible imaginary part");
  return e2 + corr.real();
}

double correction_term(const Spectrum& s, const IMethodParams& p, int K, FlowSign sign) {
  return Energy4Evaluator(s.grid, p, K, sign).correction(s).real();
}

double energy4(const Spectrum& s, const IMethodParams& p, const ModeSet& modes, FlowSign sign) {
  if (outside_modes_fraction(s, modes.K) > 1e-20)
    fail(ErrorKind::invalid_configuration, "state is not band-limited to the mode set");
  return Energy4Evaluator(s.grid, p, modes.K, sign).energy4(s);
}

double energy4(const Field& f, const IMethodParams& p, const ModeSet& modes, FlowSign sign) {
  return energy4(to_spectrum(f), p, modes, sign);
}

DerivativeIdentity derivative_identity_check(const Field& f, const IMethodParams& p, const EvolutionConfig& cfg,
                                             const ModeSet& modes, const DerivativeOptions& opt) {
  validate(p);
  const int K = modes.K;
  const Grid& g = f.grid;
  EvolutionConfig gc = cfg;
  gc.scheme = Scheme::ifrk4;
  gc.mode_cutoff = K;
  gc.dt = opt.h / opt.substeps;
  gc.t_end = opt.h;
  Stepper st(g, gc);
  Spectrum s0 = to_spectrum(f);
  st.project(s0.c);

  const FlowSign sign{cfg.orientation, cfg.kappa};
  Energy4Evaluator ev(g, p, K, sign);

  double e2[5], e4[5];
  auto measure = [&](int slot, const Spectrum& s) {
    e2[slot] = ev.energy2(s);
    e4[slot] = e2[slot] + ev.correction(s).real();
  };
  measure(2, s0);
  for (int dir : {+1, -1}) {
    Spectrum s = s0;
    const double dt = dir * opt.h / opt.substeps;
    st.steps(s.c, dt, opt.substeps);
    measure(2 + dir, s);
    st.steps(s.c, dt, opt.substeps);
    measure(2 + 2 * dir, s);
  }
  auto d5 = [&](const double* v) { return (-v[4] + 8.0 * v[3] - 8.0 * v[1] + v[0]) / (12.0 * opt.h); };

  DerivativeIdentity r;
  r.dE2_fd = d5(e2);
  r.dE4_fd = d5(e4);

  r.lambda4_M4 = lambda_n(
                     4, [&](const double* x) -> cplx { return symbol_M4(x[0], x[1], x[2], x[3], p); }, s0, modes)
                     .value;
  r.predicted_dE2 = I * cfg.kappa * r.lambda4_M4;
  r.defect2 = std::abs(r.dE2_fd - r.predicted_dE2) / std::max(std::abs(r.dE2_fd), 1e-300);

  // M_6 = i*sigma_4(k1, k2, k3, k4+k5+k6); the sum must itself be a retained mode.
  const int W = 2 * K + 1;
  const double d = g.dxi();
  std::vector<double> tab(static_cast<std::size_t>(W) * W * W, 0.0);
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2)
      for (int k3 = -K; k3 <= K; ++k3) {
        int k4 = -(k1 + k2 + k3);
        if (k4 < -K || k4 > K) continue;
        tab[(static_cast<std::size_t>(k1 + K) * W + (k2 + K)) * W + (k3 + K)] =
            symbol_sigma4(k1 * d, k2 * d, k3 * d, k4 * d, p, sign).real();
      }
  std::vector<const Spectrum*> fs(6, &s0);
  MultilinearResult l6 = lambda_n_lattice(6, fs, K, [&](const int* k) -> cplx {
    return I * tab[(static_cast<std::size_t>(k[0] + K) * W + (k[1] + K)) * W + (k[2] + K)];
  });
  r.re_lambda6 = l6.value.real();
  r.im_lambda6 = l6.value.imag();
  r.terms6 = l6.terms;
  r.ratio = r.dE4_fd / r.re_lambda6;
  r.defect4 = std::abs(r.dE4_fd - 4.0 * cfg.kappa * r.re_lambda6) / std::max(std::abs(r.dE4_fd), 1e-300);
  return r;
}

ConstantFit fit_derivative_constant(const std::vector<DerivativeIdentity>& runs) {
  ConstantFit f;
  double num = 0.0, den = 0.0;
  for (const auto& r : runs) {
    num += r.dE4_fd * r.re_lambda6;
    den += r.re_lambda6 * r.re_lambda6;
    f.ratios.push_back(r.ratio);
  }
  if (!(den > 0.0)) fail(ErrorKind::inconclusive_fit, "all Lambda_6 values vanish");
  f.c = num / den;
  for (double q : f.ratios) f.max_rel_spread = std::max(f.max_rel_spread, std::abs(q - f.c) / std::abs(f.c));
  return f;
}

}  // namespace nls4
