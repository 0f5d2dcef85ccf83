#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nls4/common.hpp"

namespace nls4 {

enum class ExperimentKind {
  evolve,
  imethod_almost,
  derivative_identity,
  resonance_check,
  trilinear_counterexample,
  dispersive_decay,
  bilinear_fit,
  local_smoothing,
  modulation_check,
  illposed_error,
  illposed_separation,
  gwp_parameters,
};

const std::vector<std::string>& experiment_kind_names();
std::optional<ExperimentKind> experiment_kind_from(const std::string& name);
std::string to_string(ExperimentKind k);

struct SpecIssue {
  std::string field;
  std::string message;
};

// Carries every validation problem found in one pass.
class SpecError : public Error {
public:
  explicit SpecError(std::vector<SpecIssue> issues);
  const std::vector<SpecIssue>& issues() const { return issues_; }

private:
  std::vector<SpecIssue> issues_;
};

// Validated spec. `canonical` is the full JSON echo with every default filled
// in; feeding it back to parse_spec_text reproduces the same spec.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::evolve;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string output;
  std::string canonical;
  std::vector<std::string> warnings;
};

struct ParseOptions {
  bool strict = false;
  std::optional<std::string> kind;  // must match the file when both are given
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> output;
};

ExperimentSpec parse_spec_text(const std::string& text, const ParseOptions& opt = {});
ExperimentSpec parse_spec(const std::string& path, const ParseOptions& opt = {});

struct ReportDocument {
  std::string status;  // pass, fail, incomplete, error
  int exit_code = 0;   // 0 pass, 1 tolerance fail, 2 runtime error
  std::string json;    // manifest + result + checks + file index
  std::vector<std::string> files;
};

struct RunOptions {
  std::string out_dir;  // overrides spec.output when non-empty
  std::function<void(const std::string&)> progress;
};

ReportDocument run(const ExperimentSpec& spec, const RunOptions& opt = {});

// Set from a signal handler; long runs stop at the next record and report
// "incomplete".
void request_interrupt();
bool interrupt_requested();
void clear_interrupt();

inline constexpr const char* tool_version = "0.3.0";

}  // namespace nls4
