#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bdqn/agent.hpp"
#include "bdqn/envs.hpp"
#include "bdqn/error.hpp"

namespace bdqn {

inline constexpr int kConfigFormatVersion = 1;
// Overrides output_dir from the config file when set.
inline constexpr const char* kOutputDirEnvVar = "BDQN_OUTPUT_DIR";

struct ExperimentConfig {
  EnvConfig env;
  AgentConfig agent;
  TrainSchedule training;
  std::vector<std::uint64_t> seeds{0};
  std::string output_dir = "runs/default";
  // Seed runs executed concurrently; outputs do not depend on it.
  int parallel_runs = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

// Every problem found while loading a config.
class ConfigViolations : public ConfigError {
 public:
  explicit ConfigViolations(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// YAML file. Unknown keys and out-of-range values are collected and reported
// together as ConfigViolations; YAML syntax errors raise FormatError.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& yaml_text);

// Applies the BDQN_OUTPUT_DIR override, if set.
void apply_env_overrides(ExperimentConfig& config);

nlohmann::ordered_json to_json(const AgentConfig& c);
AgentConfig agent_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const EnvConfig& c);
EnvConfig env_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const ExperimentConfig& c);

}  // namespace bdqn
