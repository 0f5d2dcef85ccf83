#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "nls4/harness.hpp"
#include "nls4/hash.hpp"

using namespace nls4;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("nls4_unit_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<SpecIssue> issues_of(const std::string& text, ParseOptions opt = {}) {
  try {
    parse_spec_text(text, opt);
  } catch (const SpecError& e) {
    return e.issues();
  }
  return {};
}

bool mentions(const std::vector<SpecIssue>& is, const std::string& field) {
  for (const auto& i : is)
    if (i.field == field) return true;
  return false;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("defaults are filled and echoed") {
  const ExperimentSpec s = parse_spec_text(R"({"experiment": "evolve"})");
  CHECK(s.kind == ExperimentKind::evolve);
  const json c = json::parse(s.canonical);
  CHECK(c["params"]["M"] == 4096);
  CHECK(c["params"]["dt"] == 1e-4);
  CHECK(c["tolerances"]["mass_drift"] == 1e-8);
  CHECK(c["threads"] == 1);
  // The canonical echo parses back to itself.
  CHECK(parse_spec_text(s.canonical).canonical == s.canonical);
}

TEST_CASE("validation errors") {
  auto is = issues_of(R"({"experiment": "evolve", "params": {"M": 4095}})");
  REQUIRE(is.size() == 1);
  CHECK(is[0].field == "params.M");

  is = issues_of(R"({"experiment": "evolv"})");
  REQUIRE(is.size() == 1);
  for (const auto& k : experiment_kind_names()) CHECK(is[0].message.find(k) != std::string::npos);

  // Every problem comes back from one pass.
  is = issues_of(R"({"experiment": "evolve", "seed": -3, "params": {"M": 7, "dt": "x", "L": -1, "bogus": 1},
                      "tolerances": {"mass_drift": 0}})",
                 ParseOptions{.strict = true});
  CHECK(mentions(is, "seed"));
  CHECK(mentions(is, "params.M"));
  CHECK(mentions(is, "params.dt"));
  CHECK(mentions(is, "params.L"));
  CHECK(mentions(is, "params.bogus"));
  CHECK(mentions(is, "tolerances.mass_drift"));

  const ExperimentSpec lax = parse_spec_text(R"({"experiment": "evolve", "params": {"bogus": 1}})");
  CHECK(lax.warnings.size() == 1);

  CHECK(!issues_of("{not json").empty());
  CHECK(mentions(issues_of(R"({"experiment": "evolve"})", ParseOptions{.kind = "bilinear-fit"}), "experiment"));
  CHECK(mentions(issues_of(R"({"experiment": "bilinear-fit", "params": {"N1": 8}})"), "params.N2s"));
}

TEST_CASE("git blob hash") {
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("gwp run writes a manifest") {
  const fs::path dir = scratch("gwp");
  ExperimentSpec s = parse_spec_text(R"({"experiment": "gwp-parameters", "params": {"s": "-1/2"}})");
  const ReportDocument d = run(s, {dir.string(), {}});
  CHECK(d.exit_code == 0);
  const json r = json::parse(slurp(dir / "report.json"));
  CHECK(r["status"] == "pass");
  CHECK(r["result"]["lambda_exponent"] == "1/2");
  CHECK(r["manifest"]["spec"] == json::parse(s.canonical));
  CHECK(r["manifest"]["files"][0]["sha1"] == git_blob_hash(slurp(dir / "gwp.csv")));

  s = parse_spec_text(R"({"experiment": "gwp-parameters", "params": {"s": "-1"}})");
  CHECK(run(s, {dir.string(), {}}).exit_code == 2);
}

TEST_CASE("tolerance failure exits 1") {
  const ExperimentSpec s = parse_spec_text(
      R"({"experiment": "modulation-check", "params": {"s": -0.5}, "tolerances": {"slope_tol": 1e-9}})");
  const ReportDocument d = run(s, {scratch("fail").string(), {}});
  CHECK(d.status == "fail");
  CHECK(d.exit_code == 1);
}

TEST_CASE("identical spec and seed reproduce the csv bytes") {
  const std::string text = R"({"experiment": "evolve", "seed": 9, "params":
      {"L": 20, "M": 128, "datum": "random", "amplitude": 0.2, "random_modes": 8, "dt": 1e-3, "t_end": 0.2,
       "record_stride": 20, "sobolev_indices": [-0.5]}})";
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const ExperimentSpec s = parse_spec_text(text);
  run(s, {a.string(), {}});
  run(s, {b.string(), {}});
  CHECK(slurp(a / "trajectory.csv") == slurp(b / "trajectory.csv"));
  CHECK(slurp(a / "final_state.csv") == slurp(b / "final_state.csv"));
  const ExperimentSpec other = parse_spec_text(text, ParseOptions{.seed = 10});
  const fs::path c = scratch("det_c");
  run(other, {c.string(), {}});
  CHECK(slurp(a / "trajectory.csv") != slurp(c / "trajectory.csv"));
}

TEST_CASE("interrupted run keeps a partial csv") {
  const ExperimentSpec s = parse_spec_text(R"({"experiment": "evolve", "params":
      {"L": 40, "M": 256, "width": 2, "dt": 1e-3, "t_end": 1, "record_stride": 10}})");
  const fs::path dir = scratch("interrupt");
  request_interrupt();
  const ReportDocument d = run(s, {dir.string(), {}});
  clear_interrupt();
  CHECK(d.status == "incomplete");
  CHECK(d.exit_code == 2);
  const std::string csv = slurp(dir / "trajectory.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(json::parse(slurp(dir / "report.json"))["status"] == "incomplete");
}

}
