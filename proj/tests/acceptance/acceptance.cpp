// Acceptance run: one [PASS]/[FAIL] line per criterion. Arguments select a
// subset by number, e.g. `nls4_acceptance 3 9 12`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "nls4/almost_conservation.hpp"
#include "nls4/dispersive.hpp"
#include "nls4/gwp.hpp"
#include "nls4/harness.hpp"
#include "nls4/illposed.hpp"
#include "nls4/imethod.hpp"
#include "nls4/parallel.hpp"
#include "nls4/resonance.hpp"
#include "nls4/strichartz.hpp"
#include "nls4/symmetries.hpp"

using namespace nls4;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome conservation() {
  const Grid g = make_grid(200, 4096);
  const Field f0 = make_gaussian(g, 1.0, 8.0, 0.0, 0.0);
  EvolutionConfig c;
  c.dt = 1e-4;
  c.t_end = 10.0;
  c.record_stride = 1000;
  c.store_states = false;
  const TrajectoryRecord r = evolve(f0, c);
  double dm = 0.0, dh = 0.0;
  for (std::size_t i = 0; i < r.mass.size(); ++i) {
    dm = std::max(dm, std::abs(r.mass[i] - r.mass[0]) / r.mass[0]);
    dh = std::max(dh, std::abs(r.hamiltonian[i] - r.hamiltonian[0]) / std::abs(r.hamiltonian[0]));
  }
  return {dm < 1e-8 && dh < 1e-6 && r.times.back() >= 10.0 - 1e-9,
          fmt("mass drift %.2e (< 1e-8), hamiltonian drift %.2e (< 1e-6), %zu records", dm, dh, r.times.size())};
}

Outcome covariance() {
  const Field f = make_gaussian(make_grid(40, 256), 0.5, 2.0, 0.0, 0.0);
  EvolutionConfig c;
  c.dt = 1e-4;
  c.tail_guard = false;
  const CovarianceReport cov = check_scaling_covariance(f, 2.0, c, 0.05);
  double worst_exp = 0.0;
  for (double s : {-1.25, -1.0, -0.5, 0.0, 0.5, 1.0}) {
    std::vector<double> ls{0.5, 1.0, 2.0, 4.0, 8.0}, rs;
    for (double l : ls) rs.push_back(sobolev_norm(scale_transform(f, l).field, s, true) / sobolev_norm(f, s, true));
    worst_exp = std::max(worst_exp, std::abs(fit_loglog(ls, rs).slope - (s + 1.5)));
  }
  double crit = 0.0;
  for (double l : {0.25, 0.5, 2.0, 3.0, 8.0})
    crit = std::max(crit, std::abs(sobolev_norm(scale_transform(f, l).field, -1.5, true) / sobolev_norm(f, -1.5, true) - 1));
  const bool ok = cov.defect <= cov.bound() && worst_exp < 1e-6 && crit < 1e-8;
  return {ok, fmt("defect %.2e <= bound %.2e, exponent error %.1e, critical ratio error %.1e", cov.defect, cov.bound(),
                  worst_exp, crit)};
}

Outcome resonance() {
  const SymbolicFactorization s = symbolic_factorization();
  const SweepReport sw = factorization_sweep(1000000, 20240611);
  const bool ok = s.signed_identity && s.display_abs_identity && sw.max_rel_signed < 1e-6;
  return {ok, fmt("symbolic residual %s, display form sign-exact: %s, sampled max %.2e over %zu tuples",
                  s.signed_residual.c_str(), s.display_signed_identity ? "yes" : "no (abs only)", sw.max_rel_signed,
                  sw.samples)};
}

Outcome derivative_identities() {
  const int K = 12;
  const Grid g = make_grid(8 * pi, 64);
  const ModeSet modes = make_modes(g, K);
  const IMethodParams p{1.0, -0.5};
  EvolutionConfig cfg;
  cfg.kappa = 1.0;
  std::vector<DerivativeIdentity> runs(10);
  parallel_for(runs.size(), [&](std::size_t i) {
    runs[i] = derivative_identity_check(random_field(g, K, 0.3, 1000 + i), p, cfg, modes);
  });
  double d2 = 0.0;
  for (const auto& r : runs) d2 = std::max(d2, r.defect2);
  const ConstantFit cf = fit_derivative_constant(runs);
  return {d2 < 1e-6 && cf.max_rel_spread < 1e-3,
          fmt("dE2/dt defect %.1e (< 1e-6), c = %.9f, spread %.1e (< 1e-3)", d2, cf.c, cf.max_rel_spread)};
}

Outcome almost_conservation() {
  const AlmostConservationResult r = almost_conservation_experiment(AlmostConservationConfig{});
  const double gap = r.fit2.slope - r.fit4.slope;
  return {std::abs(r.fit4.slope + 3.0) <= 1.0 && gap >= 1.5 && r.points.size() >= 5,
          fmt("slope E4 %.3f (-3 +- 1), slope E2 %.3f, gap %.3f (>= 1.5), %zu values of N", r.fit4.slope,
              r.fit2.slope, gap, r.points.size())};
}

Outcome trilinear() {
  TrilinearConfig c;
  std::string d;
  bool ok = true;
  double slope0 = 0.0, slope1 = 0.0;
  for (double s : {0.0, -0.5, -1.0}) {
    c.s = s;
    const TrilinearResult r = trilinear_counterexample(c);
    ok = ok && std::abs(r.fit.slope - r.predicted) <= 0.15;
    if (s == 0.0) slope0 = r.fit.slope;
    if (s == -1.0) slope1 = r.fit.slope;
    d += fmt("s=%g: %.3f (want %.1f) ", s, r.fit.slope, r.predicted);
  }
  ok = ok && slope0 < 0.0 && slope1 > 0.0;
  return {ok, d + "sign flips across s=-1/2"};
}

Outcome decay() {
  const Field datum = spectral_bump(make_grid(262144, 262144), 1.0);
  std::vector<double> ts;
  for (int i = 0; i < 9; ++i) ts.push_back(100.0 * std::pow(100.0, i / 8.0));
  std::vector<double> xs;
  for (int i = 0; i <= 10; ++i) xs.push_back(-50.0 + 10.0 * i);
  const double tol[2] = {0.03, 0.05};
  bool ok = true;
  std::string d;
  for (int a = 0; a <= 1; ++a) {
    const DecayResult r = decay_fit(a, datum, ts);
    const SelfSimilarityReport ss = kernel_self_similarity(a, {0.25, 0.5, 2.0, 10.0, -2.0}, xs);
    ok = ok && std::abs(r.fit.slope - r.predicted) <= tol[a] && ss.max_defect <= 1e-5;
    d += fmt("alpha=%d slope %.4f (%.2f +- %.2f), kernel defect %.1e; ", a, r.fit.slope, r.predicted, tol[a],
             ss.max_defect);
  }
  return {ok, d};
}

Outcome bilinear() {
  BilinearConfig c;
  c.snapshots = 1001;
  const BilinearResult r = bilinear_fit(c);
  return {std::abs(r.fit.slope + 1.5) <= 0.15,
          fmt("slope %.4f (-1.5 +- 0.15) over N2 in [32, 512], rms %.1e", r.fit.slope, r.fit.residual_rms)};
}

Outcome strichartz() {
  using E = Exponent;
  const bool good = strichartz_admissible(E::of(4), E::inf(), Rational(1)) &&
                    strichartz_admissible(E::of(8), E::inf(), Rational(0)) &&
                    strichartz_admissible(E::inf(), E::of(2), Rational(0)) &&
                    strichartz_admissible(E::inf(), E::of(2), Rational(1));
  int rejected = 0, tried = 0;
  for (auto [q, r, a] : {std::tuple{"2", "inf", 0}, {"4", "inf", 0}, {"8", "inf", 1}, {"8", "4", 0}, {"3", "6", 1}}) {
    ++tried;
    rejected += !strichartz_admissible(parse_exponent(q), parse_exponent(r), Rational(a));
  }
  return {good && rejected == tried, fmt("3 pairs admissible: %s, %d/%d violating triples rejected",
                                         good ? "yes" : "no", rejected, tried)};
}

Outcome illposedness() {
  ApproxParams p;
  p.profile = std::make_shared<SolitonProfile>(1.0);
  double worst = 0.0;
  bool improving = true;
  for (double N : {8.0, 16.0, 32.0, 64.0}) {
    p.N = N;
    double prev = 1e300;
    for (double dt : {1e-2, 1e-3, 1e-4, 1e-5}) {
      const double d = residual_fields(p, 0.5, dt).defect;
      improving = improving && d <= prev;
      prev = d;
    }
    worst = std::max(worst, prev);
  }
  const ErrorDecayResult e = error_decay_experiment(ErrorDecayConfig{});
  const SeparationReport s = separation_experiment(SeparationConfig{});
  const double init = s.initial_distance / s.epsilon, sup = s.sup_distance / s.epsilon;
  const bool ok = worst < 1e-3 && improving && std::abs(e.fit.slope + 2.0) <= 0.4 && init <= 0.1 && sup >= 0.5;
  return {ok, fmt("residual defect %.1e (< 1e-3, %s), error slope %.3f (-2 +- 0.4), separation %.3f -> %.3f of eps "
                  "at profile time %.2f (decoherence %.2f)",
                  worst, improving ? "improving" : "not improving", e.fit.slope, init, sup, s.profile_time_of_max,
                  s.decoherence_time)};
}

Outcome modulation() {
  const ModulationReport r = modulation_norm_check(ModulationConfig{});
  const double a = r.M_sweep.fit.slope, b = r.tau_sweep.fit.slope, c = r.A_sweep.fit.slope;
  return {std::abs(a + 0.5) <= 0.05 && std::abs(b - 0.5) <= 0.05 && std::abs(c - 1.0) <= 0.05,
          fmt("M slope %.4f (s = -0.5), tau slope %.4f (0.5), A slope %.4f (1)", a, b, c)};
}

Outcome gwp() {
  const Rational s(-1, 2);
  const GwpExponents e = gwp_exponents(s);
  const GwpParameters p = gwp_parameters(s, 1e4, 1.0, 1.0);
  const bool ok = e.lambda_exp == Rational(1, 2) && e.time_exp == Rational(1) && e.growth == Rational(1, 2) &&
                  std::abs(p.lambda - std::sqrt(p.N)) < 1e-9 * p.lambda && std::abs(p.N - 1e4) < 1e-6;
  return {ok, fmt("lambda = N^(%lld/%lld), T ~ N^%lld, growth %lld/%lld; T=1e4 gives N=%.6g, lambda=%.6g",
                  e.lambda_exp.numerator(), e.lambda_exp.denominator(), e.time_exp.numerator(),
                  e.growth.numerator(), e.growth.denominator(), p.N, p.lambda)};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "nls4_acceptance_determinism";
  fs::remove_all(root);
  const std::string specs[] = {
      R"({"experiment": "evolve", "seed": 77, "threads": 4, "params": {"L": 30, "M": 256, "datum": "random",
          "amplitude": 0.3, "dt": 1e-3, "t_end": 0.5, "record_stride": 25, "sobolev_indices": [-0.5, 1]}})",
      R"({"experiment": "derivative-identity", "seed": 5, "threads": 4, "params": {"states": 4, "K": 8}})",
      R"({"experiment": "resonance-check", "seed": 3, "threads": 4, "params": {"samples": 100000}})",
  };
  int identical = 0, files = 0;
  for (const auto& text : specs) {
    const ExperimentSpec spec = parse_spec_text(text);
    const ReportDocument a = run(spec, {(root / "a").string(), {}});
    const ReportDocument b = run(spec, {(root / "b").string(), {}});
    for (const auto& f : a.files) {
      ++files;
      identical += slurp(root / "a" / f) == slurp(root / "b" / f);
    }
  }
  std::size_t issues = 0;
  try {
    parse_spec_text(R"({"experiment": "evolve", "params": {"M": 4095, "dt": -1, "L": "wide", "scheme": "euler"},
                        "tolerances": {"mass_drift": -1}})");
  } catch (const SpecError& e) {
    issues = e.issues().size();
  }
  fs::remove_all(root);
  return {identical == files && files > 0 && issues == 5,
          fmt("%d/%d CSVs byte-identical across reruns, %zu/5 spec errors reported in one pass", identical, files,
              issues)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const Criterion all[] = {
      {1, "conservation", conservation},
      {2, "scaling covariance", covariance},
      {3, "resonance algebra", resonance},
      {4, "I-method derivative identities", derivative_identities},
      {5, "almost conservation", almost_conservation},
      {6, "trilinear counterexample", trilinear},
      {7, "dispersive decay", decay},
      {8, "bilinear Strichartz", bilinear},
      {9, "Strichartz admissibility", strichartz},
      {10, "ill-posedness construction", illposedness},
      {11, "modulation norms", modulation},
      {12, "GWP arithmetic", gwp},
      {13, "harness determinism", determinism},
  };
  std::set<int> pick;
  for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
  set_thread_count(std::max(1u, std::thread::hardware_concurrency()));

  int failed = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), sec);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
