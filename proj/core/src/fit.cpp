#include <cmath>

#include "nls4/common.hpp"
#include "nls4/fit.hpp"

namespace nls4 {

FitResult fit_loglog(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 4) fail(ErrorKind::inconclusive_fit, "log-log fit needs at least 4 points");
  FitResult r;
  for (auto [x, y] : xy) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y))
      fail(ErrorKind::inconclusive_fit, "log-log fit needs finite positive values");
    r.points.emplace_back(std::log(x), std::log(y));
  }
  const double n = static_cast<double>(r.points.size());
  double mx = 0.0, my = 0.0;
  for (auto [lx, ly] : r.points) {
    mx += lx;
    my += ly;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (auto [lx, ly] : r.points) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  if (!(sxx > 1e-24)) fail(ErrorKind::inconclusive_fit, "degenerate x range");
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss = 0.0;
  for (auto [lx, ly] : r.points) {
    double e = ly - (r.intercept + r.slope * lx);
    ss += e * e;
  }
  r.residual_rms = std::sqrt(ss / n);
  r.slope_stderr = n > 2 ? std::sqrt(ss / (n - 2) / sxx) : 0.0;
  return r;
}

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorKind::invalid_configuration, "fit arrays differ in length");
  std::vector<std::pair<double, double>> xy;
  for (std::size_t i = 0; i < x.size(); ++i) xy.emplace_back(x[i], y[i]);
  return fit_loglog(xy);
}

}  // namespace nls4
