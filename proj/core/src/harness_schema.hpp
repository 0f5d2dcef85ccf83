#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nls4/harness.hpp"

namespace nls4::detail {

enum class PType { number, integer, boolean, string, rational, numbers };

using Check = std::function<std::optional<std::string>(const nlohmann::json&)>;

struct Param {
  std::string name;
  PType type;
  nlohmann::json def;
  Check check;
  bool required = false;
};

struct Schema {
  std::vector<Param> params;
  std::vector<Param> tolerances;
  std::function<void(const nlohmann::json& params, const nlohmann::json& tols, std::vector<SpecIssue>& issues)> cross;
};

const Schema& schema_for(ExperimentKind k);

}  // namespace nls4::detail
