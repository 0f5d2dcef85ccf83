#include <cmath>
#include <map>

#include "harness_schema.hpp"
#include "nls4/common.hpp"

namespace nls4::detail {

using nlohmann::json;

namespace {

using Opt = std::optional<std::string>;

Check positive() {
  return [](const json& v) -> Opt {
    const double d = v.get<double>();
    if (!(d > 0.0) || !std::isfinite(d)) return "must be positive and finite";
    return std::nullopt;
  };
}

Check finite() {
  return [](const json& v) -> Opt {
    if (!std::isfinite(v.get<double>())) return "must be finite";
    return std::nullopt;
  };
}

Check at_least(double lo) {
  return [lo](const json& v) -> Opt {
    if (!(v.get<double>() >= lo)) return "must be >= " + json(lo).dump();
    return std::nullopt;
  };
}

Check in_range(double lo, double hi) {
  return [lo, hi](const json& v) -> Opt {
    const double d = v.get<double>();
    if (!(d >= lo && d <= hi)) return "must lie in [" + json(lo).dump() + ", " + json(hi).dump() + "]";
    return std::nullopt;
  };
}

Check grid_size() {
  return [](const json& v) -> Opt {
    const long long m = v.get<long long>();
    if (m < 8) return "must be at least 8";
    if (m % 2 != 0) return "must be even";
    if (m > (1LL << 26)) return "is too large";
    return std::nullopt;
  };
}

Check sign() {
  return [](const json& v) -> Opt {
    const long long o = v.get<long long>();
    if (o != 1 && o != -1) return "must be +1 or -1";
    return std::nullopt;
  };
}

Check one_of(std::vector<std::string> choices) {
  return [choices](const json& v) -> Opt {
    const std::string s = v.get<std::string>();
    for (const auto& c : choices)
      if (c == s) return std::nullopt;
    std::string all;
    for (const auto& c : choices) all += (all.empty() ? "" : ", ") + c;
    return "must be one of: " + all;
  };
}

Check list(std::size_t min_len, Check each) {
  return [min_len, each](const json& v) -> Opt {
    if (v.size() < min_len) return "needs at least " + std::to_string(min_len) + " entries";
    for (std::size_t i = 0; i < v.size(); ++i)
      if (each)
        if (auto m = each(v[i])) return "entry " + std::to_string(i) + " " + *m;
    return std::nullopt;
  };
}

Check integer_valued() {
  return [](const json& v) -> Opt {
    const double d = v.get<double>();
    if (!(d >= 1.0) || std::floor(d) != d) return "must be a positive integer";
    return std::nullopt;
  };
}

Param num(const std::string& n, double d, Check c = finite()) { return {n, PType::number, d, std::move(c)}; }
Param integer(const std::string& n, long long d, Check c = {}) { return {n, PType::integer, d, std::move(c)}; }
Param boolean(const std::string& n, bool d) { return {n, PType::boolean, d, {}}; }
Param str(const std::string& n, const std::string& d, Check c = {}) { return {n, PType::string, d, std::move(c)}; }
Param nums(const std::string& n, std::vector<double> d, Check c) { return {n, PType::numbers, d, std::move(c)}; }

std::vector<double> log_spaced(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
  return v;
}

std::vector<double> linear(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

Param interp() { return str("interp", "log_cubic", one_of({"log_cubic", "log_quintic"})); }

void need(bool ok, const std::string& field, const std::string& msg, std::vector<SpecIssue>& issues) {
  if (!ok) issues.push_back({field, msg});
}

std::map<ExperimentKind, Schema> build() {
  std::map<ExperimentKind, Schema> m;

  m[ExperimentKind::evolve] = {
      {num("L", 200.0, positive()), integer("M", 4096, grid_size()),
       str("equation", "quartic", one_of({"quartic", "cubic"})), integer("orientation", -1, sign()),
       num("kappa", 1.0), str("scheme", "strang", one_of({"strang", "ifrk4"})), num("dt", 1e-4, positive()),
       num("t_end", 10.0, positive()), integer("record_stride", 1000, at_least(1)),
       integer("mode_cutoff", 0, at_least(0)),
       str("datum", "gaussian", one_of({"gaussian", "sech", "random"})), num("amplitude", 1.0),
       num("width", 8.0, positive()), num("center", 0.0), num("k0", 0.0), integer("random_modes", 16, at_least(1)),
       nums("sobolev_indices", {}, list(0, finite())), boolean("tail_guard", true),
       boolean("write_final_state", true)},
      {num("mass_drift", 1e-8, positive()), num("hamiltonian_drift", 1e-6, positive())},
      [](const json& p, const json&, std::vector<SpecIssue>& is) {
        need(p["dt"].get<double>() <= p["t_end"].get<double>(), "params.dt", "must not exceed params.t_end", is);
        need(p["mode_cutoff"].get<long long>() == 0 || p["scheme"] == "ifrk4", "params.mode_cutoff",
             "Galerkin truncation requires scheme ifrk4", is);
        need(p["mode_cutoff"].get<long long>() < p["M"].get<long long>() / 2, "params.mode_cutoff",
             "must be below M/2", is);
      }};

  m[ExperimentKind::imethod_almost] = {
      {num("L", 2.0 * pi, positive()), integer("K", 64, in_range(4, 1024)), num("amplitude", 0.3, positive()),
       num("cutoff_fraction", 0.9, in_range(0.05, 1.0)), integer("cutoff_power", 8, in_range(1, 64)),
       num("spectral_decay", 0.0, at_least(0.0)), nums("Ns", {1, 2, 4, 8, 16}, list(4, positive())),
       num("s", -0.5, in_range(-1.5, 0.0)), interp(), integer("orientation", -1, sign()), num("kappa", -1.0),
       num("t_end", 0.02, positive()), num("dt", 6e-8, positive()), integer("record_stride", 3333, at_least(1))},
      {num("slope4_target", -3.0), num("slope4_tol", 1.0, positive()), num("min_gap", 1.5, at_least(0.0))},
      [](const json& p, const json&, std::vector<SpecIssue>& is) {
        need(p["dt"].get<double>() <= p["t_end"].get<double>(), "params.dt", "must not exceed params.t_end", is);
      }};

  m[ExperimentKind::derivative_identity] = {
      {num("L", 8.0 * pi, positive()), integer("K", 12, in_range(2, 16)), integer("states", 10, in_range(1, 1000)),
       num("amplitude", 0.3, positive()), num("N", 1.0, positive()), num("s", -0.5, in_range(-1.5, 0.0)), interp(),
       integer("orientation", -1, sign()), num("kappa", 1.0), num("h", 1e-5, positive()),
       integer("substeps", 8, in_range(1, 1000))},
      {num("identity2_rel", 1e-6, positive()), num("constant_spread", 1e-3, positive())},
      {}};

  m[ExperimentKind::resonance_check] = {
      {integer("samples", 1000000, in_range(1, 1e9)), integer("mean_value_samples", 20000, in_range(1, 1e8)),
       num("N", 4.0, positive()), num("s", -0.5, in_range(-1.5, 0.0)), interp()},
      {num("residual_rel", 1e-6, positive()), num("power_sup_rel", 0.1, positive()),
       num("junction_ratio", 10.0, positive())},
      {}};

  m[ExperimentKind::trilinear_counterexample] = {
      {nums("Ns", {16, 32, 64, 128, 256, 512}, list(4, integer_valued())),
       nums("s_values", {0.0, -0.25, -0.5, -0.75, -1.0}, list(1, in_range(-3.0, 1.0))), num("b", 0.5),
       integer("band_modes", 32, in_range(4, 4096)), integer("time_samples", 401, in_range(3, 1e6)),
       num("t_max", 1.0, positive())},
      {num("exponent_tol", 0.15, positive())},
      {}};

  m[ExperimentKind::dispersive_decay] = {
      {nums("alphas", {0.0, 1.0}, list(1, in_range(0.0, 1.0))), num("L", 262144.0, positive()),
       integer("M", 262144, grid_size()), num("width", 1.0, positive()),
       nums("times", log_spaced(100.0, 1e4, 9), list(4, positive())), num("min_phase", 50.0, at_least(0.0)),
       nums("kernel_times", {0.25, 0.5, 2.0, 10.0, -2.0}, list(1, finite())),
       nums("kernel_xs", linear(-50.0, 50.0, 11), list(1, finite()))},
      {nums("slope_tol", {0.03, 0.05}, list(1, positive())), num("residual_rms", 0.05, positive()),
       num("self_similarity", 1e-5, positive())},
      [](const json& p, const json& t, std::vector<SpecIssue>& is) {
        need(t["slope_tol"].size() == 1 || t["slope_tol"].size() == p["alphas"].size(), "tolerances.slope_tol",
             "needs one entry or one per alpha", is);
        for (const auto& x : p["kernel_times"])
          need(x.get<double>() != 0.0, "params.kernel_times", "entries must be nonzero", is);
      }};

  m[ExperimentKind::bilinear_fit] = {
      {num("N1", 2.0, positive()), nums("N2s", {32, 64, 128, 256, 512}, list(4, positive())),
       num("L", 64.0, positive()), integer("M", 32768, grid_size()), num("window_c", 16.0, positive()),
       integer("snapshots", 2001, in_range(3, 1e7)), boolean("diagnostic_equal", true)},
      {num("slope_tol", 0.15, positive()), num("residual_rms", 0.05, positive())},
      [](const json& p, const json&, std::vector<SpecIssue>& is) {
        for (const auto& n2 : p["N2s"])
          need(p["N1"].get<double>() <= n2.get<double>() / 8.0, "params.N2s", "every entry needs N1 <= N2/8", is);
      }};

  m[ExperimentKind::local_smoothing] = {
      {num("L", 128.0, positive()), integer("M", 16384, grid_size()),
       nums("lambdas", {1, 2, 4, 8, 16, 32}, list(2, positive())), num("window", 0.1, positive()),
       integer("snapshots", 2001, in_range(3, 1e7)), num("derivative", 1.5, at_least(0.0)),
       num("control_derivative", 2.0, at_least(0.0))},
      {num("max_spread", 2.0, at_least(1.0)), num("control_slope", 0.5), num("control_tol", 0.1, positive())},
      {}};

  m[ExperimentKind::modulation_check] = {
      {num("s", -0.5, in_range(-3.0, 3.0)), num("A", 1.0, positive()), num("M", 64.0, integer_valued()),
       num("tau", 1.0, positive()), num("x0", 0.0), nums("Ms", {16, 32, 64, 128, 256, 512}, list(4, integer_valued())),
       nums("taus", {1, 2, 4, 8, 16, 32}, list(4, positive())),
       nums("As", {0.125, 0.25, 0.5, 1, 2, 4, 8}, list(4, positive())), num("L", 2.0 * pi * 128.0, positive()),
       integer("grid_M", 8192, grid_size())},
      {num("slope_tol", 0.05, positive())},
      [](const json& p, const json&, std::vector<SpecIssue>& is) {
        const double periods = p["L"].get<double>() / (2.0 * pi);
        need(std::abs(periods - std::round(periods)) < 1e-9, "params.L", "must be an integer multiple of 2*pi", is);
      }};

  m[ExperimentKind::illposed_error] = {
      {nums("Ns", {8, 16, 32, 64}, list(4, integer_valued())), num("s", -0.5, in_range(-3.0, 1.0)),
       num("t_end", 1.0, positive()), num("dt", 1e-3, positive()), integer("records", 20, in_range(1, 1e6)),
       num("a", 1.0, positive()), num("L_profile", 64.0, positive()), integer("M", 1024, grid_size()),
       num("residual_time", 0.5, positive()), nums("residual_dts", {1e-2, 1e-3, 1e-4, 1e-5}, list(1, positive()))},
      {num("slope_target", -2.0), num("slope_tol", 0.4, positive()), num("residual_defect", 1e-3, positive())},
      [](const json& p, const json&, std::vector<SpecIssue>& is) {
        for (const auto& d : p["residual_dts"])
          need(d.get<double>() <= p["residual_time"].get<double>(), "params.residual_dts",
               "entries must not exceed residual_time", is);
      }};

  m[ExperimentKind::illposed_separation] = {
      {num("a", 1.0, in_range(0.5, 2.0)), num("a_prime", 1.05, in_range(0.5, 2.0)),
       num("s", -0.75, in_range(-1.4999, 0.0)), num("N", 16.0, integer_valued()), num("T_profile", 40.0, positive()),
       num("dt_profile", 2e-3, positive()), integer("records", 400, in_range(1, 1e6)),
       num("L_profile", 64.0, positive()), integer("M", 1024, grid_size()), boolean("emit_snapshots", false)},
      {num("initial_ratio", 0.1, positive()), num("sup_ratio", 0.5, positive())},
      {}};

  m[ExperimentKind::gwp_parameters] = {
      {{"s", PType::rational, "-1/2", {}}, num("T", 100.0, positive()), num("u0_norm", 1.0, positive()),
       num("eps0", 0.1, positive())},
      {},
      {}};
  return m;
}

}  // namespace

const Schema& schema_for(ExperimentKind k) {
  static const std::map<ExperimentKind, Schema> all = build();
  return all.at(k);
}

}  // namespace nls4::detail
