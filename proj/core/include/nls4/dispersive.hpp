#pragma once

#include <vector>

#include "nls4/fit.hpp"
#include "nls4/grid.hpp"

namespace nls4 {

// K_t(x) = int |xi|^alpha exp(i t xi^4 + i x xi) dxi, to 1e-6 absolute.
cplx kernel_K(double t, double x, double alpha);

// Closed form at x = 0: (1/2) Gamma((alpha+1)/4) |t|^{-(alpha+1)/4} exp(+-i pi (alpha+1)/8).
cplx kernel_K_origin(double t, double alpha);

struct SelfSimilarityReport {
  double max_defect = 0.0;  // max |K_t(x) - t^{-(a+1)/4} K_1(x t^{-1/4})|
  double sup_K1 = 0.0;      // max |K_1| over the sampled x
  double argmax_K1 = 0.0;
};
SelfSimilarityReport kernel_self_similarity(double alpha, const std::vector<double>& ts,
                                            const std::vector<double>& xs);

struct DecayRow {
  double t = 0.0;
  double sup = 0.0;
  bool used = true;
};

struct DecayResult {
  std::vector<DecayRow> rows;
  FitResult fit;
  double predicted = 0.0;  // -(alpha+1)/4
  double xi_eff = 0.0;
};

// Spectral bump: phi(2|xi|/width) on |xi| <= width, normalized to unit L1 norm
// in x. The grid must be large enough for the wrap-around guard.
Field spectral_bump(const Grid& g, double width);

// min_phase: times with t * xi_eff^4 < min_phase are excluded from the fit.
DecayResult decay_fit(double alpha, const Field& datum, const std::vector<double>& ts, double min_phase = 50.0);

struct BilinearRow {
  double N2 = 0.0;
  double window = 0.0;
  double value = 0.0;
};

struct BilinearConfig {
  double N1 = 2.0;
  std::vector<double> N2s{32, 64, 128, 256, 512};
  double L = 64.0;
  int M = 32768;
  double window_c = 16.0;  // time window [-c/N2^3, c/N2^3]
  int snapshots = 2001;
  bool enforce_separation = true;  // N1 <= N2/8
};

struct BilinearResult {
  std::vector<BilinearRow> rows;
  FitResult fit;
  double predicted = -1.5;
};

// One-sided unit-L2 packet with spectrum on [N/2, 2N].
Field frequency_packet(const Grid& g, double N);
BilinearResult bilinear_fit(const BilinearConfig& cfg);
// ||e^{it d^4} f * e^{it d^4} g||_{L^2_{t,x}} over [-T, T].
double bilinear_norm(const Field& f, const Field& g, double T, int snapshots);

struct LocalSmoothingConfig {
  double L = 128.0;
  int M = 16384;
  std::vector<double> lambdas{1, 2, 4, 8, 16, 32};
  double window = 0.1;  // [-window/lambda^4, window/lambda^4]
  int snapshots = 2001;
  double derivative = 1.5;
};

struct LocalSmoothingRow {
  double lambda = 0.0;
  double ratio = 0.0;
};

struct LocalSmoothingResult {
  std::vector<LocalSmoothingRow> rows;
  FitResult fit;
  double spread = 0.0;  // max ratio / min ratio
};

// sup_x (int_{-T}^{T} |D^beta e^{it d^4} phi(x)|^2 dt)^{1/2} / ||phi||_{L^2}
double local_smoothing_check(const Field& datum, double T, int snapshots, double beta = 1.5);
// Family lambda^{1/2} phi(lambda x) with phi the unit Gaussian.
LocalSmoothingResult local_smoothing_sweep(const LocalSmoothingConfig& cfg);

}  // namespace nls4
