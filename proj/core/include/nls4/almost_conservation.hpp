#pragma once

#include <vector>

#include "nls4/fit.hpp"
#include "nls4/imethod.hpp"

namespace nls4 {

// Flat-spectrum datum c_k = A * exp(-(|xi| / (cut * xi_K))^p): a smoothed point
// mass, the localized H^{-1/2-} profile.
struct AlmostConservationConfig {
  double L = 2.0 * pi;
  int K = 64;
  double amplitude = 0.3;
  double cutoff_fraction = 0.9;
  int cutoff_power = 8;
  double spectral_decay = 0.0;  // extra factor <xi>^{-decay}
  std::vector<double> Ns{1, 2, 4, 8, 16};
  double s = -0.5;
  Interp interp = Interp::log_cubic;
  int orientation = -1;
  double kappa = -1.0;
  double t_end = 0.02;
  double dt = 6e-8;
  int record_stride = 3333;
};

struct AlmostConservationPoint {
  double N = 0.0;
  double E2_0 = 0.0;
  double E4_0 = 0.0;
  double sup_dE2 = 0.0;
  double sup_dE4 = 0.0;
};

struct AlmostConservationResult {
  std::vector<AlmostConservationPoint> points;
  FitResult fit4;
  FitResult fit2;
  double mass_drift = 0.0;
  std::vector<double> times;
};

Field almost_conservation_datum(const AlmostConservationConfig& c);

AlmostConservationResult almost_conservation_experiment(const Field& u0, const AlmostConservationConfig& c);
AlmostConservationResult almost_conservation_experiment(const AlmostConservationConfig& c);

}  // namespace nls4
