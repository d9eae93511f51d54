#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "bdqn/agent.hpp"
#include "bdqn/envs.hpp"

namespace bdqn {

inline constexpr int kCheckpointFormatVersion = 1;

// Networks, hyperparameters, counters and RNG stream states. The replay
// memory is not saved.
nlohmann::ordered_json checkpoint_to_json(const Agent& agent, const EnvConfig& env);
void save_checkpoint(const Agent& agent, const EnvConfig& env, const std::filesystem::path& path);

struct LoadedCheckpoint {
  Agent agent;
  EnvConfig env;
};

LoadedCheckpoint checkpoint_from_json(const nlohmann::json& j);
LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace bdqn
