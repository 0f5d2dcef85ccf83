#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nls4/almost_conservation.hpp"
#include "nls4/dispersive.hpp"
#include "nls4/evolution.hpp"
#include "nls4/field_io.hpp"
#include "nls4/gwp.hpp"
#include "nls4/harness.hpp"
#include "nls4/hash.hpp"
#include "nls4/illposed.hpp"
#include "nls4/imethod.hpp"
#include "nls4/multilinear.hpp"
#include "nls4/parallel.hpp"
#include "nls4/resonance.hpp"
#include "nls4/spectral.hpp"
#include "nls4/symmetries.hpp"

namespace nls4 {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::atomic<bool> g_interrupt{false};

// Numbers in report payloads go through the same shortest round-trip formatter
// as the CSVs, so reports are byte-stable too.
json num(double v) {
  if (!std::isfinite(v)) return json(format_double(v));
  return json::parse(format_double(v));
}

json fit_json(const FitResult& f) {
  json j;
  j["slope"] = num(f.slope);
  j["intercept"] = num(f.intercept);
  j["residual_rms"] = num(f.residual_rms);
  j["slope_stderr"] = num(f.slope_stderr);
  j["points"] = static_cast<long long>(f.points.size());
  return j;
}

class Csv {
public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : os_(path) {
    if (!os_) fail(ErrorKind::io, "cannot write " + path.string());
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
  }
  void row(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) os_ << (i ? "," : "") << format_double(v[i]);
    os_ << '\n';
    os_.flush();
  }

private:
  std::ofstream os_;
};

struct Ctx {
  json params;
  json tols;
  std::uint64_t seed = 0;
  fs::path dir;
  std::vector<std::string> files;
  json result = json::object();
  json checks = json::array();
  std::function<void(const std::string&)> progress;

  fs::path file(const std::string& name) {
    files.push_back(name);
    return dir / name;
  }
  void say(const std::string& s) const {
    if (progress) progress(s);
  }
  void check(const std::string& name, double value, const std::string& requirement, bool pass) {
    json c;
    c["name"] = name;
    c["value"] = num(value);
    c["requirement"] = requirement;
    c["pass"] = pass;
    checks.push_back(c);
  }
  double p(const char* k) const { return params.at(k).get<double>(); }
  int pi(const char* k) const { return params.at(k).get<int>(); }
  std::vector<double> pv(const char* k) const { return params.at(k).get<std::vector<double>>(); }
  double t(const char* k) const { return tols.at(k).get<double>(); }
};

std::string within(double target, double tol) {
  return "within " + format_double(tol) + " of " + format_double(target);
}

Interp interp_of(const json& v) { return v.get<std::string>() == "log_quintic" ? Interp::log_quintic : Interp::log_cubic; }

void throw_if_interrupted() {
  if (g_interrupt.load()) fail(ErrorKind::aborted_run, "interrupted");
}

// evolve ---------------------------------------------------------------------

void run_evolve(Ctx& c) {
  const Grid g = make_grid(c.p("L"), c.pi("M"));
  Field f0;
  const std::string datum = c.params["datum"];
  if (datum == "gaussian") {
    f0 = make_gaussian(g, c.p("amplitude"), c.p("width"), c.p("k0"), c.p("center"));
  } else if (datum == "sech") {
    f0 = Field(g);
    for (int j = 0; j < g.M; ++j)
      f0.u[static_cast<std::size_t>(j)] = c.p("amplitude") / std::cosh((g.x(j) - c.p("center")) / c.p("width")) *
                                          std::polar(1.0, c.p("k0") * g.x(j));
  } else {
    f0 = random_field(g, c.pi("random_modes"), c.p("amplitude"), c.seed);
  }
  EvolutionConfig cfg;
  cfg.equation = c.params["equation"] == "cubic" ? Equation::cubic : Equation::quartic;
  cfg.orientation = c.pi("orientation");
  cfg.kappa = c.p("kappa");
  cfg.scheme = c.params["scheme"] == "ifrk4" ? Scheme::ifrk4 : Scheme::strang;
  cfg.dt = c.p("dt");
  cfg.t_end = c.p("t_end");
  cfg.record_stride = c.pi("record_stride");
  cfg.mode_cutoff = c.pi("mode_cutoff");
  cfg.tail_guard = c.params["tail_guard"].get<bool>();
  cfg.store_states = false;
  cfg.sobolev_indices = c.pv("sobolev_indices");

  std::vector<std::string> header{"t", "mass", "hamiltonian"};
  for (double s : cfg.sobolev_indices) header.push_back("H^" + format_double(s));
  header.insert(header.end(), {"tail_spectral", "tail_boundary"});
  Csv csv(c.file("trajectory.csv"), header);

  double m0 = 0.0, h0 = 0.0, dm = 0.0, dh = 0.0, last_t = 0.0;
  bool first = true;
  Spectrum last;
  auto observe = [&](double t, const Spectrum& s) {
    const Field f = to_physical(s);
    const double m = mass(f);
    const double h = hamiltonian(f, s, cfg.kappa, cfg.orientation, cfg.equation).hamiltonian;
    if (first) {
      m0 = m;
      h0 = h;
      first = false;
    }
    dm = std::max(dm, std::abs(m - m0) / m0);
    dh = std::max(dh, std::abs(h - h0) / std::max(std::abs(h0), 1e-300));
    std::vector<double> row{t, m, h};
    for (double si : cfg.sobolev_indices) row.push_back(sobolev_norm(s, si));
    const TailReport tr = tails(f, s);
    row.push_back(tr.spectral);
    row.push_back(tr.boundary);
    csv.row(row);
    last = s;
    last_t = t;
    throw_if_interrupted();
  };
  const TrajectoryRecord rec = evolve(f0, cfg, observe);
  if (c.params["write_final_state"].get<bool>()) save_field_csv(c.file("final_state.csv").string(), to_physical(last));
  c.result["dt_used"] = num(rec.dt_used);
  c.result["t_final"] = num(last_t);
  c.result["mass_drift"] = num(dm);
  c.result["hamiltonian_drift"] = num(dh);
  c.result["final_tails"] = {{"spectral", num(rec.tails.back().spectral)}, {"boundary", num(rec.tails.back().boundary)}};
  c.check("mass_drift", dm, "<= " + format_double(c.t("mass_drift")), dm <= c.t("mass_drift"));
  c.check("hamiltonian_drift", dh, "<= " + format_double(c.t("hamiltonian_drift")), dh <= c.t("hamiltonian_drift"));
}

// imethod-almost ----------------------------------------------------------------

void run_imethod_almost(Ctx& c) {
  AlmostConservationConfig a;
  a.L = c.p("L");
  a.K = c.pi("K");
  a.amplitude = c.p("amplitude");
  a.cutoff_fraction = c.p("cutoff_fraction");
  a.cutoff_power = c.pi("cutoff_power");
  a.spectral_decay = c.p("spectral_decay");
  a.Ns = c.pv("Ns");
  a.s = c.p("s");
  a.interp = interp_of(c.params["interp"]);
  a.orientation = c.pi("orientation");
  a.kappa = c.p("kappa");
  a.t_end = c.p("t_end");
  a.dt = c.p("dt");
  a.record_stride = c.pi("record_stride");
  c.say("almost conservation: " + std::to_string(a.Ns.size()) + " values of N");
  const AlmostConservationResult r = almost_conservation_experiment(a);
  Csv csv(c.file("almost_conservation.csv"), {"N", "E2_0", "E4_0", "sup_dE2", "sup_dE4"});
  for (const auto& p : r.points) csv.row({p.N, p.E2_0, p.E4_0, p.sup_dE2, p.sup_dE4});
  c.result["fit_E4"] = fit_json(r.fit4);
  c.result["fit_E2"] = fit_json(r.fit2);
  c.result["slope"] = num(r.fit4.slope);
  c.result["mass_drift"] = num(r.mass_drift);
  const double gap = r.fit2.slope - r.fit4.slope;
  c.result["slope_gap"] = num(gap);
  c.check("slope_E4", r.fit4.slope, within(c.t("slope4_target"), c.t("slope4_tol")),
          std::abs(r.fit4.slope - c.t("slope4_target")) <= c.t("slope4_tol"));
  c.check("slope_gap", gap, ">= " + format_double(c.t("min_gap")), gap >= c.t("min_gap"));
}

// derivative-identity -------------------------------------------------------------

void run_derivative_identity(Ctx& c) {
  const int K = c.pi("K");
  int M = 16;
  while (M < 4 * K + 2) M *= 2;
  const Grid g = make_grid(c.p("L"), M);
  IMethodParams ip;
  ip.N = c.p("N");
  ip.s = c.p("s");
  ip.interp = interp_of(c.params["interp"]);
  EvolutionConfig cfg;
  cfg.orientation = c.pi("orientation");
  cfg.kappa = c.p("kappa");
  DerivativeOptions opt;
  opt.h = c.p("h");
  opt.substeps = c.pi("substeps");
  const ModeSet modes = make_modes(g, K);
  const int n = c.pi("states");
  std::vector<DerivativeIdentity> runs(static_cast<std::size_t>(n));
  parallel_for(runs.size(), [&](std::size_t i) {
    const Field f = random_field(g, K, c.p("amplitude"), c.seed + i);
    runs[i] = derivative_identity_check(f, ip, cfg, modes, opt);
  });
  Csv csv(c.file("derivative_identity.csv"),
          {"state", "dE2_fd", "predicted_dE2_re", "predicted_dE2_im", "defect2", "dE4_fd", "re_lambda6", "ratio"});
  double worst2 = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& r = runs[i];
    csv.row({static_cast<double>(i), r.dE2_fd, r.predicted_dE2.real(), r.predicted_dE2.imag(), r.defect2, r.dE4_fd,
             r.re_lambda6, r.ratio});
    worst2 = std::max(worst2, r.defect2);
  }
  const ConstantFit cf = fit_derivative_constant(runs);
  c.result["constant"] = num(cf.c);
  c.result["constant_spread"] = num(cf.max_rel_spread);
  c.result["expected_constant"] = num(4.0 * cfg.kappa);
  c.result["identity2_max_defect"] = num(worst2);
  c.check("identity2", worst2, "<= " + format_double(c.t("identity2_rel")), worst2 <= c.t("identity2_rel"));
  c.check("constant_spread", cf.max_rel_spread, "<= " + format_double(c.t("constant_spread")),
          cf.max_rel_spread <= c.t("constant_spread"));
}

// resonance-check -----------------------------------------------------------------

void run_resonance(Ctx& c) {
  const SymbolicFactorization sf = symbolic_factorization();
  c.result["symbolic"] = {{"signed_identity", sf.signed_identity},
                          {"display_abs_identity", sf.display_abs_identity},
                          {"display_signed_identity", sf.display_signed_identity},
                          {"signed_residual", sf.signed_residual},
                          {"display_residual", sf.display_residual}};
  c.say("factorization sweep");
  const SweepReport sw = factorization_sweep(static_cast<std::size_t>(c.params["samples"].get<long long>()), c.seed);
  c.result["sweep"] = {{"samples", sw.samples},
                       {"max_rel_signed", num(sw.max_rel_signed)},
                       {"max_rel_abs", num(sw.max_rel_abs)}};
  IMethodParams ip;
  ip.N = c.p("N");
  ip.s = c.p("s");
  ip.interp = interp_of(c.params["interp"]);
  const auto ns = static_cast<std::size_t>(c.params["mean_value_samples"].get<long long>());
  const MeanValueReport flat = mean_value_bound_check(ip, ns, c.seed + 1, 0.025 * ip.N, 0.75 * ip.N);
  const MeanValueReport power = mean_value_bound_check(ip, ns, c.seed + 2, 2.25 * ip.N, 250.0 * ip.N);
  const MeanValueReport junction = mean_value_bound_check(ip, ns, c.seed + 3, 0.75 * ip.N, 2.5 * ip.N);
  Csv csv(c.file("mean_value.csv"), {"region", "c1", "c2", "norm1", "norm2", "max_diff1", "max_diff2",
                                     "sup_rel_err1", "sup_rel_err2"});
  int idx = 0;
  for (const MeanValueReport* r : {&flat, &power, &junction})
    csv.row({static_cast<double>(idx++), r->c1, r->c2, r->norm1, r->norm2, r->max_diff1, r->max_diff2,
             r->sup_rel_err1, r->sup_rel_err2});
  c.result["mean_value_regions"] = {"constant", "power", "junction"};

  c.check("symbolic_signed_identity", sf.signed_identity ? 0.0 : 1.0, "residual polynomial is 0", sf.signed_identity);
  c.check("symbolic_abs_identity", sf.display_abs_identity ? 0.0 : 1.0, "LHS + display form is 0",
          sf.display_abs_identity);
  c.check("sampled_residual", sw.max_rel_signed, "<= " + format_double(c.t("residual_rel")),
          sw.max_rel_signed <= c.t("residual_rel"));
  c.check("constant_region_differences", std::max(flat.max_diff1, flat.max_diff2), "== 0",
          flat.max_diff1 == 0.0 && flat.max_diff2 == 0.0);
  const double sup_err = std::max(power.sup_rel_err1, power.sup_rel_err2);
  c.check("power_region_sup", sup_err, "<= " + format_double(c.t("power_sup_rel")), sup_err <= c.t("power_sup_rel"));
  const double ratio = std::max(junction.norm1 / power.norm1, junction.norm2 / power.norm2);
  c.check("junction_ratio", ratio, "< " + format_double(c.t("junction_ratio")),
          std::isfinite(ratio) && ratio < c.t("junction_ratio"));
}

// trilinear-counterexample ---------------------------------------------------------

void run_trilinear(Ctx& c) {
  Csv csv(c.file("trilinear.csv"), {"s", "N", "lhs", "rhs", "ratio"});
  json fits = json::array();
  for (double s : c.pv("s_values")) {
    TrilinearConfig tc;
    tc.Ns = c.pv("Ns");
    tc.s = s;
    tc.b = c.p("b");
    tc.band_modes = c.pi("band_modes");
    tc.time_samples = c.pi("time_samples");
    tc.t_max = c.p("t_max");
    c.say("trilinear s=" + format_double(s));
    const TrilinearResult r = trilinear_counterexample(tc);
    for (const auto& row : r.rows) csv.row({s, row.N, row.lhs, row.rhs, row.ratio});
    json f = fit_json(r.fit);
    f["s"] = num(s);
    f["predicted"] = num(r.predicted);
    f["diverges"] = r.diverges;
    fits.push_back(f);
    c.check("exponent_s=" + format_double(s), r.fit.slope, within(r.predicted, c.t("exponent_tol")),
            std::abs(r.fit.slope - r.predicted) <= c.t("exponent_tol"));
  }
  c.result["fits"] = fits;
}

// dispersive-decay -----------------------------------------------------------------

void run_dispersive(Ctx& c) {
  const Grid g = make_grid(c.p("L"), c.pi("M"));
  const Field datum = spectral_bump(g, c.p("width"));
  const std::vector<double> alphas = c.pv("alphas"), tol = c.tols.at("slope_tol").get<std::vector<double>>();
  Csv csv(c.file("decay.csv"), {"alpha", "t", "sup", "used"});
  Csv kcsv(c.file("kernel.csv"), {"alpha", "max_defect", "sup_K1", "argmax_K1"});
  json fits = json::array();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double a = alphas[i];
    c.say("decay alpha=" + format_double(a));
    const DecayResult d = decay_fit(a, datum, c.pv("times"), c.p("min_phase"));
    for (const auto& r : d.rows) csv.row({a, r.t, r.sup, r.used ? 1.0 : 0.0});
    json f = fit_json(d.fit);
    f["alpha"] = num(a);
    f["predicted"] = num(d.predicted);
    fits.push_back(f);
    const double tl = tol.size() == 1 ? tol[0] : tol[i];
    c.check("decay_slope_alpha=" + format_double(a), d.fit.slope, within(d.predicted, tl),
            std::abs(d.fit.slope - d.predicted) <= tl);
    c.check("decay_rms_alpha=" + format_double(a), d.fit.residual_rms, "< " + format_double(c.t("residual_rms")),
            d.fit.residual_rms < c.t("residual_rms"));
    c.say("kernel self-similarity alpha=" + format_double(a));
    const SelfSimilarityReport ss = kernel_self_similarity(a, c.pv("kernel_times"), c.pv("kernel_xs"));
    kcsv.row({a, ss.max_defect, ss.sup_K1, ss.argmax_K1});
    c.check("kernel_self_similarity_alpha=" + format_double(a), ss.max_defect,
            "<= " + format_double(c.t("self_similarity")), ss.max_defect <= c.t("self_similarity"));
  }
  c.result["fits"] = fits;
}

// bilinear-fit ---------------------------------------------------------------------

void run_bilinear(Ctx& c) {
  BilinearConfig bc;
  bc.N1 = c.p("N1");
  bc.N2s = c.pv("N2s");
  bc.L = c.p("L");
  bc.M = c.pi("M");
  bc.window_c = c.p("window_c");
  bc.snapshots = c.pi("snapshots");
  c.say("bilinear sweep");
  const BilinearResult r = bilinear_fit(bc);
  Csv csv(c.file("bilinear.csv"), {"N1", "N2", "window", "value"});
  for (const auto& row : r.rows) csv.row({bc.N1, row.N2, row.window, row.value});
  c.result["fit"] = fit_json(r.fit);
  c.result["slope"] = num(r.fit.slope);
  c.check("bilinear_slope", r.fit.slope, within(r.predicted, c.t("slope_tol")),
          std::abs(r.fit.slope - r.predicted) <= c.t("slope_tol"));
  c.check("bilinear_rms", r.fit.residual_rms, "< " + format_double(c.t("residual_rms")),
          r.fit.residual_rms < c.t("residual_rms"));
  if (c.params["diagnostic_equal"].get<bool>()) {
    // N1 = N2: separation hypothesis violated, reported only.
    BilinearConfig d = bc;
    d.enforce_separation = false;
    std::vector<double> xs, ys;
    const Grid g = make_grid(bc.L, bc.M);
    Csv dcsv(c.file("bilinear_equal.csv"), {"N", "window", "value"});
    for (double n2 : bc.N2s) {
      const Field f = frequency_packet(g, n2);
      const double w = bc.window_c / (n2 * n2 * n2);
      const double v = bilinear_norm(f, f, w, bc.snapshots);
      dcsv.row({n2, w, v});
      xs.push_back(n2);
      ys.push_back(v);
    }
    c.result["equal_frequency_fit"] = fit_json(fit_loglog(xs, ys));
  }
}

// local-smoothing ------------------------------------------------------------------

void run_local_smoothing(Ctx& c) {
  LocalSmoothingConfig lc;
  lc.L = c.p("L");
  lc.M = c.pi("M");
  lc.lambdas = c.pv("lambdas");
  lc.window = c.p("window");
  lc.snapshots = c.pi("snapshots");
  Csv csv(c.file("local_smoothing.csv"), {"derivative", "lambda", "ratio"});
  lc.derivative = c.p("derivative");
  c.say("local smoothing");
  const LocalSmoothingResult r = local_smoothing_sweep(lc);
  for (const auto& row : r.rows) csv.row({lc.derivative, row.lambda, row.ratio});
  lc.derivative = c.p("control_derivative");
  c.say("local smoothing control");
  const LocalSmoothingResult ctl = local_smoothing_sweep(lc);
  for (const auto& row : ctl.rows) csv.row({lc.derivative, row.lambda, row.ratio});
  c.result["spread"] = num(r.spread);
  c.result["control_spread"] = num(ctl.spread);
  if (r.rows.size() >= 4) c.result["fit"] = fit_json(r.fit);
  if (ctl.rows.size() >= 4) c.result["control_fit"] = fit_json(ctl.fit);
  c.check("ratio_spread", r.spread, "<= " + format_double(c.t("max_spread")), r.spread <= c.t("max_spread"));
  if (ctl.rows.size() >= 4)
    c.check("control_slope", ctl.fit.slope, within(c.t("control_slope"), c.t("control_tol")),
            std::abs(ctl.fit.slope - c.t("control_slope")) <= c.t("control_tol"));
}

// modulation-check -----------------------------------------------------------------

void run_modulation(Ctx& c) {
  ModulationConfig mc;
  mc.s = c.p("s");
  mc.A = c.p("A");
  mc.M = c.p("M");
  mc.tau = c.p("tau");
  mc.x0 = c.p("x0");
  mc.Ms = c.pv("Ms");
  mc.taus = c.pv("taus");
  mc.As = c.pv("As");
  mc.L = c.p("L");
  mc.grid_M = c.pi("grid_M");
  const ModulationReport r = modulation_norm_check(mc);
  Csv csv(c.file("modulation.csv"), {"sweep", "value", "norm"});
  const std::pair<const char*, const ModulationSweep*> sweeps[] = {
      {"M", &r.M_sweep}, {"tau", &r.tau_sweep}, {"A", &r.A_sweep}};
  double code = 0.0;
  for (const auto& [name, sw] : sweeps) {
    for (std::size_t i = 0; i < sw->values.size(); ++i) csv.row({code, sw->values[i], sw->norms[i]});
    json f = fit_json(sw->fit);
    f["predicted"] = num(sw->predicted);
    f["hypothesis_ok"] = sw->hypothesis_ok;
    c.result[std::string(name) + "_sweep"] = f;
    c.check(std::string(name) + "_slope", sw->fit.slope, within(sw->predicted, c.t("slope_tol")),
            std::abs(sw->fit.slope - sw->predicted) <= c.t("slope_tol"));
    code += 1.0;
  }
  c.result["sweep_codes"] = {"M", "tau", "A"};
}

// illposed-error -------------------------------------------------------------------

void run_illposed_error(Ctx& c) {
  ApproxParams ap;
  ap.N = c.pv("Ns").front();
  ap.L_profile = c.p("L_profile");
  ap.M = c.pi("M");
  ap.profile = std::make_shared<SolitonProfile>(c.p("a"));
  Csv rcsv(c.file("residual.csv"), {"N", "dt", "defect", "E1_norm", "E2_norm"});
  double finest = 0.0, prev = 1e300;
  bool improving = true;
  for (double dt : c.pv("residual_dts")) {
    const ResidualFields rf = residual_fields(ap, c.p("residual_time"), dt);
    rcsv.row({ap.N, dt, rf.defect, sobolev_norm(rf.E1, -0.5), sobolev_norm(rf.E2, -0.5)});
    if (rf.defect > prev * 1.01 && prev > 1e-12) improving = false;
    prev = rf.defect;
    finest = rf.defect;
  }
  ErrorDecayConfig ec;
  ec.Ns = c.pv("Ns");
  ec.s = c.p("s");
  ec.t_end = c.p("t_end");
  ec.dt = c.p("dt");
  ec.records = c.pi("records");
  ec.a = c.p("a");
  ec.L_profile = c.p("L_profile");
  ec.M = c.pi("M");
  c.say("error decay over " + std::to_string(ec.Ns.size()) + " carriers");
  const ErrorDecayResult r = error_decay_experiment(ec);
  Csv csv(c.file("error_decay.csv"), {"N", "sup_error", "error_at_zero", "uap_norm"});
  for (const auto& row : r.rows) csv.row({row.N, row.sup_error, row.error_at_zero, row.uap_norm});
  c.result["fit"] = fit_json(r.fit);
  c.result["slope"] = num(r.fit.slope);
  c.result["residual_defect"] = num(finest);
  c.result["residual_improving"] = improving;
  c.check("residual_defect", finest, "<= " + format_double(c.t("residual_defect")), finest <= c.t("residual_defect"));
  c.check("residual_improves_with_dt", improving ? 1.0 : 0.0, "defect non-increasing as dt shrinks", improving);
  c.check("error_slope", r.fit.slope, within(c.t("slope_target"), c.t("slope_tol")),
          std::abs(r.fit.slope - c.t("slope_target")) <= c.t("slope_tol"));
}

// illposed-separation --------------------------------------------------------------

void run_illposed_separation(Ctx& c) {
  SeparationConfig sc;
  sc.a = c.p("a");
  sc.a_prime = c.p("a_prime");
  sc.s = c.p("s");
  sc.N = c.p("N");
  sc.T_profile = c.p("T_profile");
  sc.dt_profile = c.p("dt_profile");
  sc.records = c.pi("records");
  sc.L_profile = c.p("L_profile");
  sc.M = c.pi("M");
  c.say("separation experiment");
  const SeparationReport r = separation_experiment(sc);
  Csv csv(c.file("separation.csv"), {"t", "profile_time", "distance", "distance_ap", "error1", "error2"});
  const double lam4 = std::pow(r.lambda, 4);
  for (const auto& rec : r.records)
    csv.row({rec.t, lam4 * rec.t, rec.distance, rec.distance_ap, rec.error1, rec.error2});
  json& j = c.result;
  j["s"] = num(r.s);
  j["N"] = num(r.N);
  j["lambda"] = num(r.lambda);
  j["epsilon"] = num(r.epsilon);
  j["delta"] = num(r.delta);
  j["norm1"] = num(r.norm1);
  j["norm2"] = num(r.norm2);
  j["initial_distance"] = num(r.initial_distance);
  j["sup_distance"] = num(r.sup_distance);
  j["time_of_max"] = num(r.time_of_max);
  j["profile_time_of_max"] = num(r.profile_time_of_max);
  j["decoherence_time"] = num(r.decoherence_time);
  j["triangle_slack"] = num(r.triangle_slack);
  j["in_illposed_range"] = r.in_illposed_range;
  if (!r.in_illposed_range) j["warning"] = "s outside (-15/14, -1/2): reported for contrast only";
  if (c.params["emit_snapshots"].get<bool>()) {
    ApproxParams p[2];
    for (int k = 0; k < 2; ++k) {
      p[k].N = sc.N;
      p[k].L_profile = sc.L_profile;
      p[k].M = sc.M;
      p[k].profile = std::make_shared<SolitonProfile>(k == 0 ? sc.a : sc.a_prime);
      save_field_csv(c.file("snapshot_uap" + std::to_string(k + 1) + ".csv").string(),
                     build_uap(p[k], r.decoherence_time));
    }
  }
  const double init = r.initial_distance / r.epsilon, sup = r.sup_distance / r.epsilon;
  c.check("initial_distance_ratio", init, "<= " + format_double(c.t("initial_ratio")), init <= c.t("initial_ratio"));
  c.check("sup_distance_ratio", sup, ">= " + format_double(c.t("sup_ratio")), sup >= c.t("sup_ratio"));
}

// gwp-parameters -------------------------------------------------------------------

std::string rat(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

void run_gwp(Ctx& c) {
  const json& sv = c.params["s"];
  Rational s;
  if (sv.is_string()) {
    const std::string str = sv.get<std::string>();
    const auto slash = str.find('/');
    try {
      s = slash == std::string::npos ? to_rational(std::stod(str))
                                     : Rational(std::stoll(str.substr(0, slash)), std::stoll(str.substr(slash + 1)));
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail(ErrorKind::invalid_configuration, "cannot parse s = '" + str + "'");
    }
  } else {
    s = to_rational(sv.get<double>());
  }
  const GwpParameters g = gwp_parameters(s, c.p("T"), c.p("u0_norm"), c.p("eps0"));
  c.result["s"] = rat(s);
  c.result["lambda_exponent"] = rat(g.exponents.lambda_exp);
  c.result["time_exponent"] = rat(g.exponents.time_exp);
  c.result["growth_exponent"] = rat(g.exponents.growth);
  c.result["N"] = num(g.N);
  c.result["lambda"] = num(g.lambda);
  Csv csv(c.file("gwp.csv"), {"T", "N", "lambda", "growth_exponent"});
  csv.row({c.p("T"), g.N, g.lambda, g.growth_exponent});
}

}  // namespace

void request_interrupt() { g_interrupt.store(true); }
bool interrupt_requested() { return g_interrupt.load(); }
void clear_interrupt() { g_interrupt.store(false); }

ReportDocument run(const ExperimentSpec& spec, const RunOptions& opt) {
  const json canon = json::parse(spec.canonical);
  Ctx c;
  c.params = canon.at("params");
  c.tols = canon.at("tolerances");
  c.seed = spec.seed;
  c.progress = opt.progress;
  c.dir = opt.out_dir.empty() ? fs::path(spec.output) : fs::path(opt.out_dir);
  set_thread_count(spec.threads);

  ReportDocument doc;
  json error;
  std::error_code ec;
  fs::create_directories(c.dir, ec);
  if (ec) {
    doc.status = "error";
    doc.exit_code = 2;
    json j;
    j["status"] = doc.status;
    j["error"] = {{"kind", "io"}, {"message", "cannot create output directory " + c.dir.string()}};
    doc.json = j.dump(2);
    return doc;
  }
  try {
    switch (spec.kind) {
      case ExperimentKind::evolve: run_evolve(c); break;
      case ExperimentKind::imethod_almost: run_imethod_almost(c); break;
      case ExperimentKind::derivative_identity: run_derivative_identity(c); break;
      case ExperimentKind::resonance_check: run_resonance(c); break;
      case ExperimentKind::trilinear_counterexample: run_trilinear(c); break;
      case ExperimentKind::dispersive_decay: run_dispersive(c); break;
      case ExperimentKind::bilinear_fit: run_bilinear(c); break;
      case ExperimentKind::local_smoothing: run_local_smoothing(c); break;
      case ExperimentKind::modulation_check: run_modulation(c); break;
      case ExperimentKind::illposed_error: run_illposed_error(c); break;
      case ExperimentKind::illposed_separation: run_illposed_separation(c); break;
      case ExperimentKind::gwp_parameters: run_gwp(c); break;
    }
    bool all = true;
    for (const auto& ch : c.checks) all = all && ch["pass"].get<bool>();
    doc.status = all ? "pass" : "fail";
    doc.exit_code = all ? 0 : 1;
  } catch (const AbortedRun& e) {
    doc.status = "incomplete";
    doc.exit_code = 2;
    error = {{"kind", "aborted_run"}, {"message", e.what()}};
  } catch (const Error& e) {
    doc.status = e.kind() == ErrorKind::aborted_run ? "incomplete" : "error";
    doc.exit_code = 2;
    error = {{"kind", static_cast<int>(e.kind())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    doc.status = "error";
    doc.exit_code = 2;
    error = {{"kind", "exception"}, {"message", e.what()}};
  }

  json manifest;
  manifest["tool"] = "4nls-lab";
  manifest["version"] = tool_version;
  manifest["spec"] = canon;
  manifest["seed"] = spec.seed;
  manifest["threads"] = spec.threads;
  if (!spec.warnings.empty()) manifest["warnings"] = spec.warnings;
  json index = json::array();
  for (const auto& f : c.files) {
    const fs::path p = c.dir / f;
    if (fs::exists(p)) index.push_back({{"file", f}, {"sha1", git_blob_hash_file(p.string())}});
  }
  manifest["files"] = index;

  json report;
  report["manifest"] = manifest;
  report["status"] = doc.status;
  report["result"] = c.result;
  report["checks"] = c.checks;
  if (!error.is_null()) report["error"] = error;
  doc.json = report.dump(2) + "\n";
  doc.files = c.files;
  std::ofstream out(c.dir / "report.json");
  out << doc.json;
  if (!out) {
    doc.status = "error";
    doc.exit_code = 2;
  }
  return doc;
}

}  // namespace nls4
