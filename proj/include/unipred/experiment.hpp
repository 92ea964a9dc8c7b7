#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

namespace unipred::experiment {

// {"kind": ..., "seed": n, "output": "path/prefix", ...kind parameters}.
// Relative paths resolve against the directory of the config file.
struct ExperimentConfig {
  std::string kind;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
  std::filesystem::path output;
  std::filesystem::path base_dir;

  // FNV-1a 64 of the canonical JSON, as 16 hex digits.
  std::string digest() const;

  static ExperimentConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
  static ExperimentConfig load(const std::filesystem::path& path);
};

struct RunRecord {
  std::string digest;
  std::string kind;
  std::string csv;
  nlohmann::json summary;
  std::string version;
  double wall_clock_seconds = 0;
  bool ok = false;
};

std::uint64_t fnv1a64(const std::string& bytes);

// Writes <output>.csv and <output>.json when an output prefix is set (the
// override wins over the config's own). Downstream errors are rethrown with
// the config digest prepended.
RunRecord run_experiment(const ExperimentConfig& config,
                         const std::optional<std::filesystem::path>& output_override = std::nullopt);

}  // namespace unipred::experiment
