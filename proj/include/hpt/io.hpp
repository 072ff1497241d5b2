#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hpt/cone.hpp"
#include "hpt/generate.hpp"
#include "hpt/metric_space.hpp"

namespace hpt {

/// n lines of n comma-separated numbers; `inf` is accepted. A first line
/// that is not numeric is read as labels. A point whose off-diagonal row
/// and column are entirely `inf` becomes omega.
ExtendedMetricSpace read_csv(std::istream& in);
ExtendedMetricSpace parse_csv(std::string_view text);

/// Label header followed by the matrix; distances printed with %.17g.
std::string write_csv(const ExtendedMetricSpace& space);

/// {"labels": [...], "matrix": [[...]], "omega": index|null}, with
/// infinite entries as the string "inf".
nlohmann::json to_descriptor(const ExtendedMetricSpace& space);

/// Accepts the matrix form above or {"generator": {kind, params, seed}}.
ExtendedMetricSpace from_descriptor(const nlohmann::json& j);

nlohmann::json to_json(const GeneratorSpec& spec);

/// {"base_space": descriptor, "points": [[base, height]], "o": [z0, 1.0]}
nlohmann::json cone_to_json(const ConeSpace& cone);
ConeSpace cone_from_json(const nlohmann::json& j);

/// Reads a CSV or JSON file, chosen by its first non-blank character.
ExtendedMetricSpace load_space_file(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// "fnv1a64:" followed by 16 hex digits.
std::string fnv1a_digest(std::string_view bytes);

}  // namespace hpt
