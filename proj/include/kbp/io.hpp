#pragma once

#include <json.hpp>

#include <filesystem>

#include "kbp/configlp.hpp"
#include "kbp/packing.hpp"
#include "kbp/watts.hpp"

namespace kbp {

using Json = nlohmann::json;

// { "capacity": "12.5", "demands": ["3.0", ...] }. Numbers are accepted in place of strings.
Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& j);

// { "k": 2, "bins": [[0,1], ...] }
Json packing_to_json(const Packing& packing);
Packing packing_from_json(const Json& j);

// Durations as fraction strings such as "1/9".
Json watts_to_json(const WattsSolution& solution);

Json configurations_to_json(const ConfigurationSystem& system, const LpSolution* solution = nullptr);

// Throw ParseError on unreadable or malformed files.
Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace kbp
