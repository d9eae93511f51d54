#include "bdqn/envs.hpp"

#include <cmath>

#include "bdqn/chain_mdp.hpp"
#include "bdqn/corridor_world.hpp"
#include "bdqn/error.hpp"
#include "bdqn/reflex_target.hpp"

namespace bdqn {

DurationSet::DurationSet(int d) : d_max(d) {
  if (d < 1) throw ConfigError("d_max must be at least 1");
}

EnvFrame Environment::reset(std::uint64_t seed) {
  frames_ = 0;
  over_ = false;
  last_observation_ = do_reset(seed);
  return {last_observation_, 0.0, false, false};
}

EnvFrame Environment::step(int action) {
  if (over_) throw UsageError(name() + ": step called on a finished episode");
  if (action < 0 || action >= spec().action_count) {
    throw UsageError(name() + ": action " + std::to_string(action) + " out of range");
  }
  EnvFrame frame = do_step(action);
  ++frames_;
  if (!frame.terminal && frames_ >= spec().max_frames_per_episode) frame.truncated = true;
  over_ = frame.over();
  last_observation_ = frame.observation;
  return frame;
}

SmdpOutcome execute_duration(Environment& env, int action, int d, double gamma,
                             const DurationSet& durations) {
  if (!durations.contains(d)) {
    throw UsageError("execute_duration: duration " + std::to_string(d) + " outside 1.." +
                     std::to_string(durations.d_max));
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("execute_duration: gamma outside (0, 1]");
  SmdpOutcome out;
  double discount = 1.0;
  for (int k = 0; k < d; ++k) {
    EnvFrame frame = env.step(action);
    out.accumulated_reward += discount * frame.reward;
    out.undiscounted_reward += frame.reward;
    discount *= gamma;
    ++out.frames_elapsed;
    out.terminal = frame.terminal;
    out.truncated = frame.truncated;
    out.next_observation = std::move(frame.observation);
    if (out.terminal || out.truncated) break;
  }
  return out;
}

std::unique_ptr<Environment> make_env(const EnvConfig& c) {
  if (c.max_frames < 0) throw ConfigError("env.max_frames must be non-negative");
  if (c.name == "chain") {
    return std::make_unique<ChainMdp>(c.chain_length, c.max_frames > 0 ? c.max_frames : 50);
  }
  if (c.name == "corridor") {
    return std::make_unique<CorridorWorld>(c.max_frames > 0 ? c.max_frames : 200, c.living_cost,
                                           c.bump_cost);
  }
  if (c.name == "reflex") {
    ReflexTarget::Params p;
    p.min_delay = c.min_delay;
    p.max_delay = c.max_delay;
    p.window = c.window;
    p.wait_cost = c.wait_cost;
    if (c.max_frames > 0) p.max_frames = c.max_frames;
    return std::make_unique<ReflexTarget>(p);
  }
  throw ConfigError("env.name: unknown environment '" + c.name + "'");
}

}  // namespace bdqn
