#include "bdqn/checkpoint.hpp"

#include <fstream>

#include "bdqn/config.hpp"
#include "bdqn/error.hpp"

namespace bdqn {

nlohmann::ordered_json checkpoint_to_json(const Agent& agent, const EnvConfig& env) {
  nlohmann::ordered_json j;
  j["format_version"] = kCheckpointFormatVersion;
  j["env"] = to_json(env);
  j["env_spec"] = {{"action_count", agent.env_spec().action_count},
                   {"observation_width", agent.env_spec().observation_width},
                   {"max_frames_per_episode", agent.env_spec().max_frames_per_episode}};
  j["agent"] = to_json(agent.config());
  j["counters"] = {{"decisions", agent.decisions()},
                   {"episodes", agent.episodes()},
                   {"epsilon", agent.epsilon()},
                   {"bandit_baseline", agent.bandit_baseline_value()}};
  j["master_seed"] = agent.streams().master_seed();
  j["rng_streams"] = agent.streams().save_state();
  j["online"] = to_json(agent.online());
  j["target"] = to_json(agent.target());
  return j;
}

void save_checkpoint(const Agent& agent, const EnvConfig& env, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write checkpoint " + path.string());
  out << checkpoint_to_json(agent, env).dump(1) << '\n';
}

LoadedCheckpoint checkpoint_from_json(const nlohmann::json& j) {
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw FormatError("checkpoint: unsupported format_version " + std::to_string(version));
    }
    EnvConfig env = env_config_from_json(j.at("env"));
    EnvSpec spec;
    spec.action_count = j.at("env_spec").at("action_count").get<int>();
    spec.observation_width = j.at("env_spec").at("observation_width").get<int>();
    spec.max_frames_per_episode = j.at("env_spec").at("max_frames_per_episode").get<int>();
    AgentConfig config = agent_config_from_json(j.at("agent"));
    NetworkParams online = network_from_json(j.at("online"));
    NetworkParams target = network_from_json(j.at("target"));
    Agent agent(config, spec, online, j.at("master_seed").get<std::uint64_t>());
    const auto& c = j.at("counters");
    agent.restore(std::move(online), std::move(target), c.at("decisions").get<long>(),
                  c.at("episodes").get<long>(), c.at("epsilon").get<double>(),
                  c.at("bandit_baseline").get<double>());
    agent.streams().restore_state(j.at("rng_streams").get<std::map<std::string, std::string>>());
    return {std::move(agent), std::move(env)};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint: ") + e.what());
  }
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open checkpoint " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("checkpoint " + path.string() + ": " + e.what());
  }
  return checkpoint_from_json(j);
}

}  // namespace bdqn
