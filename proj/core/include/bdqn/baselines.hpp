#pragma once

#include <cstdint>
#include <vector>

#include "bdqn/agent.hpp"

namespace bdqn {

// Every action is held for a fixed number of frames.
struct StaticArrConfig {
  int arr = 4;
};

// Q-learning over the augmented action set A x duration_options.
struct DiscreteDurationConfig {
  std::vector<int> duration_options{2, 8};
};

// Q-head layout for the discrete family is action-major:
//   index = action * options + option
inline int pair_index(int action, int option, int options) { return action * options + option; }
inline int pair_action(int index, int options) { return index / options; }
inline int pair_option(int index, int options) { return index % options; }

// `shared` supplies every hyperparameter except the duration rule; its family
// and family-specific fields are overwritten.
Agent static_arr_agent(const StaticArrConfig& config, AgentConfig shared, const EnvSpec& env,
                       std::uint64_t seed);
Agent dfdqn_agent(const DiscreteDurationConfig& config, AgentConfig shared, const EnvSpec& env,
                  std::uint64_t seed);

// Dispatches on config.family.
Agent make_agent(const AgentConfig& config, const EnvSpec& env, std::uint64_t seed);

}  // namespace bdqn
