#include <algorithm>
#include <cmath>
#include <random>

#include "nls4/common.hpp"
#include "nls4/parallel.hpp"
#include "nls4/polynomial.hpp"
#include "nls4/resonance.hpp"

namespace nls4 {

namespace {

double dyadic_floor(double v) {
  const double a = std::abs(v);
  return a > 0.0 ? std::exp2(std::floor(std::log2(a))) : 0.0;
}

double max_abs(const Quad& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

void require_hyperplane(const Quad& x) {
  const double sum = x[0] + x[1] + x[2] + x[3];
  if (std::abs(sum) > 1e-9 * max_abs(x)) fail(ErrorKind::off_hyperplane, "tuple does not sum to zero");
}

constexpr std::size_t chunk_size = 8192;

std::uint64_t chunk_seed(std::uint64_t seed, std::size_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace

HyperplaneSample make_hyperplane_sample(double a, double b, double c) {
  HyperplaneSample s;
  s.xi = {a, b, c, -(a + b + c)};
  for (int i = 0; i < 4; ++i) s.dyadic[static_cast<std::size_t>(i)] = dyadic_floor(s.xi[static_cast<std::size_t>(i)]);
  return s;
}

double resonance_lhs(const Quad& x) {
  auto q = [](double v) { return (v * v) * (v * v); };
  return q(x[0]) - q(x[1]) + q(x[2]) - q(x[3]);
}

double resonance_rhs_signed(const Quad& x) {
  const double sq = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
  const double p = x[0] + x[2];
  return (x[0] + x[1]) * (x[0] + x[3]) * (sq + 2.0 * p * p);
}

double resonance_rhs_display(const Quad& x) {
  const double t = x[0] + x[1] + x[2];
  const double p = x[0] + x[2];
  return (x[0] + x[1]) * (x[1] + x[2]) * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + t * t + 2.0 * p * p);
}

double factorization_residual(const Quad& x) {
  require_hyperplane(x);
  return std::abs(resonance_lhs(x) - resonance_rhs_signed(x));
}

double factorization_residual_abs(const Quad& x) {
  require_hyperplane(x);
  return std::abs(std::abs(resonance_lhs(x)) - std::abs(resonance_rhs_display(x)));
}

SymbolicFactorization symbolic_factorization() {
  const int n = 3;
  const Polynomial x1 = Polynomial::variable(n, 0), x2 = Polynomial::variable(n, 1),
                   x3 = Polynomial::variable(n, 2);
  const Polynomial x4 = -(x1 + x2 + x3);
  const Polynomial two = Polynomial::constant(n, 2);

  const Polynomial lhs = x1.pow(4) - x2.pow(4) + x3.pow(4) - x4.pow(4);
  const Polynomial sq = x1.pow(2) + x2.pow(2) + x3.pow(2) + x4.pow(2);
  const Polynomial signed_rhs = (x1 + x2) * (x1 + x4) * (sq + two * (x1 + x3).pow(2));
  const Polynomial display =
      (x1 + x2) * (x2 + x3) *
      (x1.pow(2) + x2.pow(2) + x3.pow(2) + (x1 + x2 + x3).pow(2) + two * (x1 + x3).pow(2));

  SymbolicFactorization r;
  const Polynomial d_signed = lhs - signed_rhs;
  const Polynomial d_display = lhs - display;
  r.signed_identity = d_signed.is_zero();
  r.display_signed_identity = d_display.is_zero();
  r.display_abs_identity = (lhs + display).is_zero();
  r.signed_residual = d_signed.to_string();
  r.display_residual = d_display.to_string();
  return r;
}

SweepReport factorization_sweep(std::size_t samples, std::uint64_t seed) {
  SweepReport rep;
  rep.samples = samples;
  rep.seed = seed;
  const std::size_t chunks = (samples + chunk_size - 1) / chunk_size;
  std::vector<double> worst_s(chunks, 0.0), worst_a(chunks, 0.0);
  parallel_for(chunks, [&](std::size_t ci) {
    std::mt19937_64 rng(chunk_seed(seed, ci));
    std::uniform_real_distribution<double> logmag(std::log(1e-3), std::log(1e3));
    std::bernoulli_distribution sign(0.5);
    const std::size_t lo = ci * chunk_size, hi = std::min(samples, lo + chunk_size);
    for (std::size_t i = lo; i < hi; ++i) {
      double v[3];
      for (double& e : v) e = (sign(rng) ? -1.0 : 1.0) * std::exp(logmag(rng));
      const HyperplaneSample s = make_hyperplane_sample(v[0], v[1], v[2]);
      const double scale = std::pow(max_abs(s.xi), 4);
      worst_s[ci] = std::max(worst_s[ci], factorization_residual(s.xi) / scale);
      worst_a[ci] = std::max(worst_a[ci], factorization_residual_abs(s.xi) / scale);
    }
  });
  for (std::size_t c = 0; c < chunks; ++c) {
    rep.max_rel_signed = std::max(rep.max_rel_signed, worst_s[c]);
    rep.max_rel_abs = std::max(rep.max_rel_abs, worst_a[c]);
  }
  return rep;
}

namespace {

struct SupPair {
  double d1 = 0.0;
  double d2 = 0.0;
};

// Sampled sup of |a'| and |a''| over [lo, hi] (same sign, away from 0).
SupPair sampled_sups(const IMethodParams& p, double lo, double hi) {
  SupPair r;
  const int n = 96;
  for (int i = 0; i <= n; ++i) {
    const double z = lo + (hi - lo) * i / n;
    const double h1 = 1e-5 * std::abs(z), h2 = 1e-3 * std::abs(z);
    const double d1 = (m_squared(p, z + h1) - m_squared(p, z - h1)) / (2.0 * h1);
    const double d2 = (m_squared(p, z + h2) - 2.0 * m_squared(p, z) + m_squared(p, z - h2)) / (h2 * h2);
    r.d1 = std::max(r.d1, std::abs(d1));
    r.d2 = std::max(r.d2, std::abs(d2));
  }
  return r;
}

}  // namespace

MeanValueReport mean_value_bound_check(const IMethodParams& p, std::size_t samples, std::uint64_t seed,
                                       double xi_lo, double xi_hi) {
  validate(p);
  if (!(xi_lo > 0.0) || !(xi_hi >= xi_lo)) fail(ErrorKind::invalid_configuration, "need 0 < xi_lo <= xi_hi");
  MeanValueReport rep;
  rep.samples = samples;
  const std::size_t chunks = (samples + 1023) / 1024;
  std::vector<MeanValueReport> part(chunks);
  parallel_for(chunks, [&](std::size_t ci) {
    std::mt19937_64 rng(chunk_seed(seed, ci));
    std::uniform_real_distribution<double> logmag(std::log(xi_lo), std::log(xi_hi));
    std::uniform_real_distribution<double> frac(-0.125, 0.125);
    std::bernoulli_distribution sign(0.5);
    MeanValueReport& r = part[ci];
    const std::size_t lo = ci * 1024, hi = std::min(samples, lo + 1024);
    for (std::size_t i = lo; i < hi; ++i) {
      const double xi = (sign(rng) ? -1.0 : 1.0) * std::exp(logmag(rng));
      const double eta = frac(rng) * std::abs(xi), lam = frac(rng) * std::abs(xi);
      if (eta == 0.0 || lam == 0.0) continue;
      const double a0 = m_squared(p, xi);
      const double d1 = std::abs(m_squared(p, xi + eta) - a0);
      const double d2 = std::abs(m_squared(p, xi + eta + lam) - m_squared(p, xi + eta) - m_squared(p, xi + lam) + a0);
      r.max_diff1 = std::max(r.max_diff1, d1);
      r.max_diff2 = std::max(r.max_diff2, d2);

      const double lo1 = std::min(xi, xi + eta), hi1 = std::max(xi, xi + eta);
      const double lo2 = xi + std::min({0.0, eta, lam, eta + lam}), hi2 = xi + std::max({0.0, eta, lam, eta + lam});
      const SupPair s1 = sampled_sups(p, lo1, hi1), s2 = sampled_sups(p, lo2, hi2);
      if (d1 > 0.0 && s1.d1 > 0.0) r.c1 = std::max(r.c1, d1 / (std::abs(eta) * s1.d1));
      if (d2 > 0.0 && s2.d2 > 0.0) r.c2 = std::max(r.c2, d2 / (std::abs(eta * lam) * s2.d2));
      r.norm1 = std::max(r.norm1, d1 / (std::abs(eta) * a0 / std::abs(xi)));
      r.norm2 = std::max(r.norm2, d2 / (std::abs(eta * lam) * a0 / (xi * xi)));

      // closed form on the power branch: a = (|z|/N)^{2s}
      if (std::min(std::abs(lo2), std::abs(hi2)) > 2.0 * p.N * (1.0 + 2e-3) && lo2 * hi2 > 0.0) {
        const double zmin = std::min(std::abs(lo2), std::abs(hi2));
        const double zmin1 = std::min(std::abs(lo1), std::abs(hi1));
        const double s2x = 2.0 * p.s;
        const double e1 = std::abs(s2x) * std::pow(p.N, -s2x) * std::pow(zmin1, s2x - 1.0);
        const double e2 = std::abs(s2x * (s2x - 1.0)) * std::pow(p.N, -s2x) * std::pow(zmin, s2x - 2.0);
        r.sup_rel_err1 = std::max(r.sup_rel_err1, std::abs(s1.d1 / e1 - 1.0));
        r.sup_rel_err2 = std::max(r.sup_rel_err2, std::abs(s2.d2 / e2 - 1.0));
      }
    }
  });
  for (const auto& r : part) {
    rep.c1 = std::max(rep.c1, r.c1);
    rep.c2 = std::max(rep.c2, r.c2);
    rep.norm1 = std::max(rep.norm1, r.norm1);
    rep.norm2 = std::max(rep.norm2, r.norm2);
    rep.max_diff1 = std::max(rep.max_diff1, r.max_diff1);
    rep.max_diff2 = std::max(rep.max_diff2, r.max_diff2);
    rep.sup_rel_err1 = std::max(rep.sup_rel_err1, r.sup_rel_err1);
    rep.sup_rel_err2 = std::max(rep.sup_rel_err2, r.sup_rel_err2);
  }
  return rep;
}

}  // namespace nls4
