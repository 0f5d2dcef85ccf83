#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nls4/common.hpp"
#include "nls4/dispersive.hpp"
#include "nls4/parallel.hpp"

namespace nls4 {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr double rel_tol = 1e-11;
constexpr unsigned max_depth = 15;

struct Partial {
  cplx value{};
  double error = 0.0;
};

void accumulate(Partial& p, cplx v, double e) {
  p.value += v;
  p.error += e;
}

// int_lo^hi xi^alpha exp(i (t xi^4 + x xi)) dxi for 0 <= lo < hi, split dyadically.
Partial real_piece(double t, double x, double alpha, double R) {
  Partial p;
  auto f = [&](double xi) {
    const double x2 = xi * xi;
    return std::pow(xi, alpha) * std::polar(1.0, t * x2 * x2 + x * xi);
  };
  double hi = R;
  for (int k = 0; k < 12; ++k) {
    const double lo = 0.5 * hi;
    double err = 0.0;
    cplx v = GK::integrate(f, lo, hi, max_depth, rel_tol, &err);
    accumulate(p, v, err);
    hi = lo;
  }
  double err = 0.0;
  accumulate(p, GK::integrate(f, 0.0, hi, max_depth, rel_tol, &err), err);
  return p;
}

// int_R^inf along xi = R + rho e^{i pi/8}; needs 4 t R^3 + x >= 0 so the phase
// gains a positive imaginary part on the ray.
Partial ray_piece(double t, double x, double alpha, double R) {
  const cplx e = std::polar(1.0, pi / 8.0);
  auto f = [&](double rho) {
    const cplx xi = R + rho * e;
    const cplx x2 = xi * xi;
    return std::pow(xi, alpha) * std::exp(I * (t * x2 * x2 + x * xi)) * e;
  };
  // Im(phase) >= t rho^4, so rho_max with t rho^4 = 60 leaves e^{-60}.
  const double rho_max = std::pow(60.0 / t, 0.25);
  Partial p;
  const int pieces = 16;
  for (int k = 0; k < pieces; ++k) {
    double err = 0.0;
    const double a = rho_max * k / pieces, b = rho_max * (k + 1) / pieces;
    accumulate(p, GK::integrate(f, a, b, max_depth, rel_tol, &err), err);
  }
  return p;
}

}  // namespace

cplx kernel_K(double t, double x, double alpha) {
  if (t == 0.0 || !std::isfinite(t) || !std::isfinite(x))
    fail(ErrorKind::invalid_configuration, "kernel_K needs finite t != 0");
  if (alpha < 0.0 || alpha > 1.0) fail(ErrorKind::invalid_configuration, "kernel_K needs alpha in [0,1]");
  if (t < 0.0) return std::conj(kernel_K(-t, -x, alpha));

  const double R = std::max(2.0 * std::pow(t, -0.25), 2.0 * std::cbrt(std::abs(x) / (4.0 * t)));
  Partial right = real_piece(t, x, alpha, R);
  Partial left = real_piece(t, -x, alpha, R);
  Partial rt = ray_piece(t, x, alpha, R);
  Partial lt = ray_piece(t, -x, alpha, R);
  const cplx value = right.value + left.value + rt.value + lt.value;
  const double err = right.error + left.error + rt.error + lt.error;
  if (!(err < 1e-7) || !std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    std::ostringstream os;
    os << "kernel quadrature did not converge at t=" << t << " x=" << x << " alpha=" << alpha
       << " (R=" << R << ", error estimate " << err << ")";
    fail(ErrorKind::quadrature, os.str());
  }
  return value;
}

cplx kernel_K_origin(double t, double alpha) {
  if (t == 0.0) fail(ErrorKind::invalid_configuration, "kernel_K needs t != 0");
  const double a = (alpha + 1.0) / 4.0;
  const double mag = 0.5 * std::tgamma(a) * std::pow(std::abs(t), -a);
  return std::polar(mag, (t > 0.0 ? 1.0 : -1.0) * pi * a / 2.0);
}

SelfSimilarityReport kernel_self_similarity(double alpha, const std::vector<double>& ts,
                                            const std::vector<double>& xs) {
  SelfSimilarityReport rep;
  const std::size_t nx = xs.size();
  std::vector<double> defect(ts.size() * nx, 0.0), k1(nx, 0.0);
  parallel_for(ts.size() * nx, [&](std::size_t i) {
    const double t = ts[i / nx], x = xs[i % nx];
    const cplx direct = kernel_K(t, x, alpha);
    const double sc = std::pow(std::abs(t), -0.25);
    const cplx scaled = std::pow(std::abs(t), -(alpha + 1.0) / 4.0) *
                        kernel_K(t > 0.0 ? 1.0 : -1.0, x * sc, alpha);
    defect[i] = std::abs(direct - scaled);
  });
  parallel_for(nx, [&](std::size_t i) { k1[i] = std::abs(kernel_K(1.0, xs[i], alpha)); });
  for (double d : defect) rep.max_defect = std::max(rep.max_defect, d);
  for (std::size_t i = 0; i < nx; ++i)
    if (k1[i] > rep.sup_K1) {
      rep.sup_K1 = k1[i];
      rep.argmax_K1 = xs[i];
    }
  return rep;
}

}  // namespace nls4
