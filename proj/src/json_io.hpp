#pragma once

#include <string>

#include <json.hpp>

namespace levitrap {

// Serializes with sorted keys and every float as %.12e, so identical inputs
// produce byte-identical documents.
std::string dump_deterministic(const nlohmann::json& doc, int indent = 2);

// Flattens a JSON tree into RFC-4180 CSV rows "dotted.key,value" with a
// header row. Arrays use numeric path components.
std::string json_to_csv(const nlohmann::json& doc);

std::string format_double(double v);  // %.12e

}  // namespace levitrap
