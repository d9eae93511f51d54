#include "bdqn/baselines.hpp"

namespace bdqn {

Agent static_arr_agent(const StaticArrConfig& config, AgentConfig shared, const EnvSpec& env,
                       std::uint64_t seed) {
  shared.family = AgentFamily::static_arr;
  shared.arr = config.arr;
  return Agent(std::move(shared), env, seed);
}

Agent dfdqn_agent(const DiscreteDurationConfig& config, AgentConfig shared, const EnvSpec& env,
                  std::uint64_t seed) {
  shared.family = AgentFamily::discrete;
  shared.duration_options = config.duration_options;
  return Agent(std::move(shared), env, seed);
}

Agent make_agent(const AgentConfig& config, const EnvSpec& env, std::uint64_t seed) {
  switch (config.family) {
    case AgentFamily::static_arr:
      return static_arr_agent({config.arr}, config, env, seed);
    case AgentFamily::discrete:
      return dfdqn_agent({config.duration_options}, config, env, seed);
    case AgentFamily::bandit:
      break;
  }
  return Agent(config, env, seed);
}

}  // namespace bdqn
