#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <functional>
#include <utility>
#include <vector>

#include "nls4/evolution.hpp"
#include "nls4/fit.hpp"
#include "nls4/grid.hpp"

namespace nls4 {

// (s, y) = (t, (x + 4 N^3 t) / (sqrt(6) N))
std::pair<double, double> change_coords(double N, double t, double x);

// Cubic NLS profile v(s, y) solving i v_s - v_yy + kappa |v|^2 v = 0.
class ProfileTrajectory {
public:
  virtual ~ProfileTrajectory() = default;
  virtual Spectrum at(double s, const Grid& gy) const = 0;
  virtual double kappa() const = 0;
};

// sqrt(2) a sech(a y) e^{-i a^2 s}, exact for kappa = -1. Sampled with periodic
// images folded onto the grid.
class SolitonProfile : public ProfileTrajectory {
public:
  explicit SolitonProfile(double a) : a_(a) {}
  Spectrum at(double s, const Grid& gy) const override;
  double kappa() const override { return -1.0; }
  double amplitude() const { return a_; }

private:
  double a_;
};

// Arbitrary initial profile evolved by the cubic solver (IFRK4). States are
// cached per grid and requested time. Built from a Field, only that grid is
// accepted; built from a function of y, any grid is (an N sweep needs this,
// since L_y moves slightly with N).
class SolverProfile : public ProfileTrajectory {
public:
  SolverProfile(Field v0, double kappa, double dt);
  SolverProfile(std::function<cplx(double)> v0, double kappa, double dt);
  Spectrum at(double s, const Grid& gy) const override;
  double kappa() const override { return kappa_; }

private:
  std::map<double, Spectrum>& cache_for(const Grid& gy) const;

  std::function<cplx(double)> v0_fn_;
  std::optional<Grid> fixed_;
  double kappa_;
  double dt_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<double, int>, std::map<double, Spectrum>> cache_;
};

struct ApproxParams {
  double N = 8.0;
  double L_profile = 64.0;  // target length of the profile domain in y
  int M = 1024;
  std::shared_ptr<const ProfileTrajectory> profile;
};

struct ApproxGrids {
  Grid x;  // 4NLS grid, carrier N
  Grid y;  // profile grid, same sample count, L_y = L_x / (sqrt(6) N)
};

// L_x = 2 pi n with n = round(sqrt(6) N L_profile / (2 pi)), so the carrier is N n.
ApproxGrids approx_grids(const ApproxParams& p);

// e^{i N^4 t + i N x} v(t, x/(sqrt(6) N) + 4 N^2 t / sqrt(6)); the common phase
// e^{i N^4 t} is kept. Spectral interpolation on the profile lattice.
Field build_uap(const ApproxParams& p, double t);

struct ResidualFields {
  Field E1;
  Field E2;
  Field direct;          // (i d_t + d_x^4) U + kappa |U|^2 U
  double defect = 0.0;   // ||direct - E1 - E2|| / ||E1 + E2|| in L^2
};

// dt is the step of the centered difference in the profile time.
ResidualFields residual_fields(const ApproxParams& p, double t, double dt = 1e-5);

struct ModulationSweep {
  std::vector<double> values;
  std::vector<double> norms;
  FitResult fit;
  double predicted = 0.0;
  bool hypothesis_ok = true;
};

struct ModulationReport {
  ModulationSweep M_sweep;
  ModulationSweep tau_sweep;
  ModulationSweep A_sweep;
};

struct ModulationConfig {
  double s = -0.5;
  double A = 1.0;
  double M = 64.0;
  double tau = 1.0;
  double x0 = 0.0;
  std::vector<double> Ms{16, 32, 64, 128, 256, 512};
  std::vector<double> taus{1, 2, 4, 8, 16, 32};
  std::vector<double> As{0.125, 0.25, 0.5, 1, 2, 4, 8};
  double L = 2.0 * pi * 128.0;
  int grid_M = 8192;
};

// ||A e^{iMx} u((x-x0)/tau)||_{H^s} with u = exp(-y^2), exactly on the carrier grid.
double modulation_norm(double A, double M, double tau, double x0, double s, double L, int grid_M);
ModulationReport modulation_norm_check(const ModulationConfig& cfg);

struct ErrorDecayRow {
  double N = 0.0;
  double sup_error = 0.0;
  double error_at_zero = 0.0;
  double uap_norm = 0.0;
};

struct ErrorDecayConfig {
  std::vector<double> Ns{8, 16, 32, 64};
  double s = -0.5;
  double t_end = 1.0;
  double dt = 1e-3;
  int records = 20;
  double a = 1.0;
  double L_profile = 64.0;
  int M = 1024;
  // Optional profile replacing the soliton (same for every N).
  std::shared_ptr<const ProfileTrajectory> profile;
};

struct ErrorDecayResult {
  std::vector<ErrorDecayRow> rows;
  FitResult fit;
  double predicted = -2.0;
};

ErrorDecayResult error_decay_experiment(const ErrorDecayConfig& cfg);

struct SeparationConfig {
  double a = 1.0;
  double a_prime = 1.05;
  double s = -0.75;
  double N = 16.0;
  double T_profile = 40.0;  // run window in profile time
  double dt_profile = 2e-3;
  int records = 400;
  double L_profile = 64.0;
  int M = 1024;
};

struct SeparationRecord {
  double t = 0.0;  // 4NLS time of the scaled solutions
  double distance = 0.0;
  double distance_ap = 0.0;
  double error1 = 0.0;
  double error2 = 0.0;
};

struct SeparationReport {
  double s = 0.0;
  double N = 0.0;
  double lambda = 0.0;
  double epsilon = 0.0;  // max of the two initial H^s norms
  double delta = 0.0;    // initial distance
  double norm1 = 0.0;
  double norm2 = 0.0;
  double initial_distance = 0.0;
  double sup_distance = 0.0;
  double time_of_max = 0.0;          // 4NLS time
  double profile_time_of_max = 0.0;  // lambda^4 * time_of_max
  double decoherence_time = 0.0;     // pi / |a^2 - a'^2| in profile time
  double triangle_slack = 0.0;       // min over records of lhs - rhs (>= 0 when it holds)
  bool in_illposed_range = true;
  std::vector<SeparationRecord> records;
};

SeparationReport separation_experiment(const SeparationConfig& cfg);

}  // namespace nls4
