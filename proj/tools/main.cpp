// 4nls-lab: run one experiment from a JSON spec and write report.json plus CSVs.

#include <csignal>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nls4/harness.hpp"

namespace {

extern "C" void on_sigint(int) { nls4::request_interrupt(); }

std::string kinds_list() {
  std::string s;
  for (const auto& k : nls4::experiment_kind_names()) s += (s.empty() ? "" : ", ") + k;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments for the fourth-order cubic NLS"};
  app.set_version_flag("--version", std::string(nls4::tool_version));

  std::string kind, spec_path, out;
  std::uint64_t seed = 0;
  int threads = 0;
  bool strict = false, emit = false, quiet = false;
  app.add_option("experiment-kind", kind, "One of: " + kinds_list())->required();
  app.add_option("--spec", spec_path, "Experiment spec (JSON, comments allowed)")->required();
  auto* out_opt = app.add_option("--out", out, "Output directory (default from the spec)");
  auto* seed_opt = app.add_option("--seed", seed, "Override the spec seed");
  auto* thr_opt = app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--strict", strict, "Unknown keys are errors");
  app.add_flag("--emit-snapshots", emit, "Write field snapshots where the experiment supports it");
  app.add_flag("-q,--quiet", quiet, "No progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  nls4::ParseOptions po;
  po.strict = strict;
  po.kind = kind;
  if (*seed_opt) po.seed = seed;
  if (*thr_opt) po.threads = threads;
  if (*out_opt) po.output = out;

  nls4::ExperimentSpec spec;
  try {
    spec = nls4::parse_spec(spec_path, po);
  } catch (const nls4::SpecError& e) {
    std::cerr << "invalid spec " << spec_path << ":\n";
    for (const auto& is : e.issues()) std::cerr << "  " << is.field << ": " << is.message << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  for (const auto& w : spec.warnings) std::cerr << "warning: " << w << '\n';

  if (emit) {
    auto j = nlohmann::json::parse(spec.canonical);
    if (j["params"].contains("emit_snapshots")) {
      j["params"]["emit_snapshots"] = true;
      spec.canonical = j.dump(2);
    } else {
      std::cerr << "warning: " << kind << " has no snapshots to emit\n";
    }
  }

  std::signal(SIGINT, on_sigint);
  nls4::RunOptions ro;
  if (!quiet) ro.progress = [](const std::string& s) { std::cerr << "[4nls-lab] " << s << '\n'; };
  const nls4::ReportDocument doc = nls4::run(spec, ro);

  const auto rep = nlohmann::json::parse(doc.json);
  if (rep.contains("checks"))
    for (const auto& c : rep["checks"])
      std::cout << (c["pass"].get<bool>() ? "[PASS] " : "[FAIL] ") << c["name"].get<std::string>() << " = "
                << c["value"].dump() << " (" << c["requirement"].get<std::string>() << ")\n";
  if (rep.contains("error")) std::cerr << "error: " << rep["error"]["message"].get<std::string>() << '\n';
  std::cout << "status: " << doc.status << "  report: " << spec.output << "/report.json\n";
  return doc.exit_code;
}
