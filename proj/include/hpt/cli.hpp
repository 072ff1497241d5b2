#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpt/metric_space.hpp"
#include "hpt/quad_scan.hpp"

namespace hpt {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  /// e.g. {"certify", "apt"} or {"gen"}.
  std::vector<std::string> command;
  /// Path to a CSV/JSON file, or a generator string.
  std::string input;
  std::string gen;
  std::optional<double> kappa;
  std::uint64_t seed = 0;
  int workers = 1;
  std::optional<double> threshold;
  double tolerance = 1e-9;
  std::string out;
  std::string format = "json";

  // cone
  std::string heights = "geometric:9";
  bool truncate = false;
  std::size_t z0 = 0;
  std::size_t levels = 9;
  std::optional<std::string> point;  ///< "base,height"
  std::uint64_t imax = 1u << 20;

  // moebius
  std::optional<std::string> quad;  ///< "i,j,k,l"
  std::string other;
  std::optional<std::size_t> omega_index;
};

struct RunOutcome {
  int exit_code = 0;
  nlohmann::json report;
};

/// Reads a space from a path (CSV or JSON) or, if no such file exists, a
/// generator string "kind:k=v,...". Does not validate.
ExtendedMetricSpace parse_space(const std::string& source, std::uint64_t seed);

/// Runs one subcommand. Never throws: input and usage errors give exit
/// code 2 and a report carrying "error" (and "violations" when the input
/// is not a metric). Artifacts (generated spaces, cones, involutions,
/// boundary metrics) go to config.out; otherwise the report does.
RunOutcome run(const RunConfig& config);

/// The report with every timing field removed, for reproducibility checks.
nlohmann::json strip_timings(nlohmann::json report);

}  // namespace hpt
