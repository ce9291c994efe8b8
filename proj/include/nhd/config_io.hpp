#pragma once

#include "nhd/continuum.hpp"
#include "nhd/coupling.hpp"
#include "nhd/driven.hpp"
#include "nhd/lattice.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>

namespace nhd {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// A runnable configuration: "kind": "lattice" or "driven".
using RunConfig = std::variant<SimConfig, DriveConfig>;

json to_json(const CouplingSpec& spec);
json to_json(const ContinuumSpec& spec);
json to_json(const SimConfig& config);
json to_json(const DriveConfig& config);
json to_json(const RunConfig& config);

// All parsers throw ParseError with the JSON pointer of the offending field.
// `where` is the pointer of `j` inside the enclosing document.
CouplingSpec coupling_from_json(const json& j, const std::string& where = "");
ContinuumSpec continuum_from_json(const json& j, const std::string& where = "");
SimConfig sim_config_from_json(const json& j);
DriveConfig drive_config_from_json(const json& j);
RunConfig run_config_from_json(const json& j);

RunConfig load_run_config(const std::filesystem::path& path);

} // namespace nhd
