#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "harness_schema.hpp"
#include "nls4/harness.hpp"

namespace nls4 {

using nlohmann::json;

namespace {

const std::vector<std::pair<ExperimentKind, std::string>>& kind_table() {
  static const std::vector<std::pair<ExperimentKind, std::string>> t = {
      {ExperimentKind::evolve, "evolve"},
      {ExperimentKind::imethod_almost, "imethod-almost"},
      {ExperimentKind::derivative_identity, "derivative-identity"},
      {ExperimentKind::resonance_check, "resonance-check"},
      {ExperimentKind::trilinear_counterexample, "trilinear-counterexample"},
      {ExperimentKind::dispersive_decay, "dispersive-decay"},
      {ExperimentKind::bilinear_fit, "bilinear-fit"},
      {ExperimentKind::local_smoothing, "local-smoothing"},
      {ExperimentKind::modulation_check, "modulation-check"},
      {ExperimentKind::illposed_error, "illposed-error"},
      {ExperimentKind::illposed_separation, "illposed-separation"},
      {ExperimentKind::gwp_parameters, "gwp-parameters"},
  };
  return t;
}

std::string join_kinds() {
  std::string s;
  for (const auto& n : experiment_kind_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

bool type_ok(const json& v, detail::PType t) {
  using detail::PType;
  switch (t) {
    case PType::number:
      return v.is_number();
    case PType::integer:
      return v.is_number_integer() || (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>());
    case PType::boolean:
      return v.is_boolean();
    case PType::string:
      return v.is_string();
    case PType::rational:
      return v.is_string() || v.is_number();
    case PType::numbers:
      if (!v.is_array()) return false;
      for (const auto& e : v)
        if (!e.is_number()) return false;
      return true;
  }
  return false;
}

const char* type_name(detail::PType t) {
  using detail::PType;
  switch (t) {
    case PType::number: return "a number";
    case PType::integer: return "an integer";
    case PType::boolean: return "a boolean";
    case PType::string: return "a string";
    case PType::rational: return "a rational (\"p/q\") or a number";
    case PType::numbers: return "a list of numbers";
  }
  return "?";
}

json normalize(const json& v, detail::PType t) {
  if (t == detail::PType::integer && v.is_number_float()) return json(static_cast<long long>(v.get<double>()));
  if (t == detail::PType::number && v.is_number_integer()) return json(v.get<double>());
  if (t == detail::PType::numbers) {
    json out = json::array();
    for (const auto& e : v) out.push_back(e.get<double>());
    return out;
  }
  return v;
}

void fill_section(const json& in, const std::vector<detail::Param>& schema, const std::string& section, bool strict,
                  json& out, std::vector<SpecIssue>& issues, std::vector<std::string>& warnings) {
  out = json::object();
  if (!in.is_null() && !in.is_object()) {
    issues.push_back({section, "must be an object"});
    return;
  }
  std::set<std::string> known;
  for (const auto& p : schema) {
    known.insert(p.name);
    const std::string field = section + "." + p.name;
    if (in.is_object() && in.contains(p.name)) {
      const json& v = in.at(p.name);
      if (!type_ok(v, p.type)) {
        issues.push_back({field, std::string("must be ") + type_name(p.type)});
        continue;
      }
      json nv = normalize(v, p.type);
      if (p.check) {
        if (auto msg = p.check(nv)) {
          issues.push_back({field, *msg});
          continue;
        }
      }
      out[p.name] = nv;
    } else if (p.required) {
      issues.push_back({field, "missing required key"});
    } else {
      out[p.name] = p.def;
    }
  }
  if (in.is_object())
    for (const auto& [k, v] : in.items())
      if (!known.count(k)) {
        const std::string msg = "unknown key '" + section + "." + k + "'";
        if (strict)
          issues.push_back({section + "." + k, "unknown key"});
        else
          warnings.push_back(msg);
      }
}

}  // namespace

SpecError::SpecError(std::vector<SpecIssue> issues)
    : Error(ErrorKind::invalid_configuration,
            [&] {
              std::string s = "invalid experiment spec:";
              for (const auto& i : issues) s += "\n  " + i.field + ": " + i.message;
              return s;
            }()),
      issues_(std::move(issues)) {}

const std::vector<std::string>& experiment_kind_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, n] : kind_table()) v.push_back(n);
    return v;
  }();
  return names;
}

std::optional<ExperimentKind> experiment_kind_from(const std::string& name) {
  for (const auto& [k, n] : kind_table())
    if (n == name) return k;
  return std::nullopt;
}

std::string to_string(ExperimentKind k) {
  for (const auto& [kk, n] : kind_table())
    if (kk == k) return n;
  return "unknown";
}

ExperimentSpec parse_spec_text(const std::string& text, const ParseOptions& opt) {
  std::vector<SpecIssue> issues;
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw SpecError(std::vector<SpecIssue>{{"<document>", std::string("not valid JSON: ") + e.what()}});
  }
  if (!doc.is_object()) throw SpecError(std::vector<SpecIssue>{{"<document>", "top level must be an object"}});

  ExperimentSpec spec;
  static const std::set<std::string> top = {"experiment", "seed", "threads", "output", "params", "tolerances"};
  for (const auto& [k, v] : doc.items())
    if (!top.count(k)) {
      if (opt.strict)
        issues.push_back({k, "unknown key"});
      else
        spec.warnings.push_back("unknown key '" + k + "'");
    }

  std::optional<ExperimentKind> kind;
  std::string kind_name;
  if (doc.contains("experiment")) {
    if (!doc["experiment"].is_string())
      issues.push_back({"experiment", "must be a string"});
    else
      kind_name = doc["experiment"].get<std::string>();
  }
  if (opt.kind) {
    if (!kind_name.empty() && kind_name != *opt.kind)
      issues.push_back({"experiment", "spec says '" + kind_name + "' but '" + *opt.kind + "' was requested"});
    kind_name = *opt.kind;
  }
  if (kind_name.empty()) {
    issues.push_back({"experiment", "missing required key; valid kinds: " + join_kinds()});
  } else {
    kind = experiment_kind_from(kind_name);
    if (!kind) issues.push_back({"experiment", "unknown experiment kind '" + kind_name + "'; valid kinds: " + join_kinds()});
  }

  spec.seed = 0;
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      issues.push_back({"seed", "must be a non-negative integer"});
    else
      spec.seed = s.get<std::uint64_t>();
  }
  if (opt.seed) spec.seed = *opt.seed;

  spec.threads = 1;
  if (doc.contains("threads")) {
    const json& t = doc["threads"];
    if (!t.is_number_integer() || t.get<long long>() < 0 || t.get<long long>() > 1024)
      issues.push_back({"threads", "must be an integer in [0, 1024]"});
    else
      spec.threads = t.get<int>();
  }
  if (opt.threads) {
    if (*opt.threads < 0) issues.push_back({"threads", "must be non-negative"});
    spec.threads = *opt.threads;
  }

  if (doc.contains("output")) {
    if (!doc["output"].is_string())
      issues.push_back({"output", "must be a string"});
    else
      spec.output = doc["output"].get<std::string>();
  }
  if (opt.output) spec.output = *opt.output;
  if (spec.output.empty()) {
    const char* root = std::getenv("NLS4_OUT_ROOT");
    spec.output = std::string(root && *root ? root : "out") + "/" + kind_name;
  }

  json params, tols;
  if (kind) {
    spec.kind = *kind;
    const detail::Schema& sc = detail::schema_for(*kind);
    fill_section(doc.value("params", json()), sc.params, "params", opt.strict, params, issues, spec.warnings);
    fill_section(doc.value("tolerances", json()), sc.tolerances, "tolerances", opt.strict, tols, issues,
                 spec.warnings);
    if (issues.empty() && sc.cross) sc.cross(params, tols, issues);
  }
  if (!issues.empty()) throw SpecError(std::move(issues));

  json canon;
  canon["experiment"] = kind_name;
  canon["seed"] = spec.seed;
  canon["threads"] = spec.threads;
  canon["output"] = spec.output;
  canon["params"] = params;
  canon["tolerances"] = tols;
  spec.canonical = canon.dump(2);
  return spec;
}

ExperimentSpec parse_spec(const std::string& path, const ParseOptions& opt) {
  std::ifstream in(path);
  if (!in) throw SpecError(std::vector<SpecIssue>{{"<file>", "cannot read spec file '" + path + "'"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), opt);
}

}  // namespace nls4
