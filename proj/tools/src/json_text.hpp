#pragma once

// Deterministic JSON text with doubles at 17 significant digits (the
// library's own dump prints the shortest round-trip form).

#include <filesystem>
#include <string>

#include "json.hpp"

namespace unitsurf::cli {

using Json = nlohmann::ordered_json;

std::string to_text(const Json& value);

void write_json(const Json& value, const std::filesystem::path& path);

}  // namespace unitsurf::cli
