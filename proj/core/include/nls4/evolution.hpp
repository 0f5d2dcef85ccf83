#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nls4/grid.hpp"
#include "nls4/spectral.hpp"

namespace nls4 {

enum class Equation { quartic, cubic };
enum class Scheme { strang, ifrk4 };

// orientation o fixes the free flow: every mode rotates as exp(i*o*t*omega(xi))
// with omega = xi^4 (quartic) or xi^2 (cubic). The PDE being solved is
//   quartic: i u_t = -o u_xxxx + kappa |u|^2 u
//   cubic:   i u_t =  o u_xx   + kappa |u|^2 u
// so o = -1 is i u_t = u_xxxx + kappa |u|^2 u.
struct EvolutionConfig {
  Equation equation = Equation::quartic;
  int orientation = -1;
  double kappa = 1.0;
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::strang;
  int record_stride = 1;
  // K > 0 switches to the Galerkin system on |k| <= K with an exactly dealiased
  // cubic term (ifrk4 only).
  int mode_cutoff = 0;
  bool store_states = true;
  std::vector<double> sobolev_indices;
  bool tail_guard = true;
  double start_tail_tol = 1e-8;
  double run_tail_tol = 1e-6;
};

void validate(const EvolutionConfig& cfg, const Grid& g);

double dispersion(Equation eq, double xi);

Field linear_propagate_4nls(const Field& f, double t, int orientation);
Field linear_propagate_nls(const Field& f, double t, int orientation);
Spectrum linear_propagate(const Spectrum& s, double t, int orientation, Equation eq);
Field nonlinear_substep(const Field& f, double dt, double kappa);

// Reusable integrator state for one grid and configuration. Coefficients are in
// FFT order on the configuration grid.
class Stepper {
public:
  Stepper(const Grid& g, const EvolutionConfig& cfg);

  void step(CVec& c, double dt);
  void steps(CVec& c, double dt, long long n);
  // -i*kappa*P(|u|^2 u) in coefficient space.
  void nonlinear_rhs(const CVec& c, CVec& out);
  void project(CVec& c) const;

  const Grid& grid() const { return grid_; }
  const EvolutionConfig& config() const { return cfg_; }

private:
  void refresh_phases(double dt);
  void strang(CVec& c, double dt);
  void ifrk4(CVec& c, double dt);

  Grid grid_;
  EvolutionConfig cfg_;
  std::vector<double> omega_;
  double phase_dt_ = 0.0;
  CVec half_, full_;
  CVec work_, a_, b_, cc_, d_, tmp_;
  int pad_ = 0;
  CVec padbuf_;
};

Field strang_step(const Field& f, const EvolutionConfig& cfg);
Field ifrk4_step(const Field& f, const EvolutionConfig& cfg);

// Brute-force right-hand side of the Fourier-truncated system on |k| <= K.
Spectrum galerkin_rhs(const Spectrum& s, const EvolutionConfig& cfg, int K);

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Field> states;
  std::vector<double> mass;
  std::vector<double> hamiltonian;
  std::vector<std::vector<double>> norms;  // norms[r][j] for sobolev_indices[j]
  std::vector<TailReport> tails;
  std::vector<double> sobolev_indices;
  double dt_used = 0.0;
  bool complete = true;
  std::string status = "complete";
};

class AbortedRun : public Error {
public:
  AbortedRun(const std::string& what, TrajectoryRecord partial)
      : Error(ErrorKind::aborted_run, what), partial_(std::move(partial)) {}
  const TrajectoryRecord& partial() const { return partial_; }

private:
  TrajectoryRecord partial_;
};

using Observer = std::function<void(double t, const Spectrum& s)>;

TrajectoryRecord evolve(const Field& f0, const EvolutionConfig& cfg, const Observer& observer = {});
Field evolve_to(const Field& f0, const EvolutionConfig& cfg);

}  // namespace nls4
