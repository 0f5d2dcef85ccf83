#pragma once

#include <utility>
#include <vector>

namespace nls4 {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double slope_stderr = 0.0;
  std::vector<std::pair<double, double>> points;  // (log x, log y)
};

// Least squares of log y against log x. Needs at least four positive points.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& xy);
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nls4
