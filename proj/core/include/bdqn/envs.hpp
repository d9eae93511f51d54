#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bdqn {

struct EnvFrame {
  std::vector<double> observation;
  double reward = 0.0;
  bool terminal = false;
  // The episode hit max_frames_per_episode without reaching a terminal state.
  bool truncated = false;

  bool over() const { return terminal || truncated; }
};

struct EnvSpec {
  int action_count = 0;
  int observation_width = 0;
  int max_frames_per_episode = 0;
};

// Arms {1, ..., d_max}.
struct DurationSet {
  int d_max = 1;
  explicit DurationSet(int d_max);
  bool contains(int d) const { return d >= 1 && d <= d_max; }
};

struct SmdpOutcome {
  std::vector<double> next_observation;
  // sum_{k < frames_elapsed} gamma^k r_k
  double accumulated_reward = 0.0;
  // Plain sum of the per-frame rewards, used for episode scores.
  double undiscounted_reward = 0.0;
  int frames_elapsed = 0;
  bool terminal = false;
  bool truncated = false;
};

// Frame-level environment. The base class owns the frame counter and the
// hard per-episode cutoff; subclasses implement the dynamics.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  virtual EnvSpec spec() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  EnvFrame reset(std::uint64_t seed);
  // Throws UsageError after the episode is over or for an invalid action.
  EnvFrame step(int action);

  bool episode_over() const { return over_; }
  int frame_count() const { return frames_; }
  const std::vector<double>& observation() const { return last_observation_; }

 protected:
  virtual std::vector<double> do_reset(std::uint64_t seed) = 0;
  virtual EnvFrame do_step(int action) = 0;

 private:
  int frames_ = 0;
  bool over_ = true;
  std::vector<double> last_observation_;
};

// Repeats `action` for up to d frames, stopping early at a terminal frame or
// the frame cutoff.
SmdpOutcome execute_duration(Environment& env, int action, int d, double gamma,
                             const DurationSet& durations);

// Parameters for every shipped environment; fields irrelevant to the chosen
// environment are ignored. max_frames = 0 keeps the environment default.
struct EnvConfig {
  std::string name = "chain";
  int max_frames = 0;
  int chain_length = 6;
  int min_delay = 1;
  int max_delay = 10;
  int window = 3;
  double wait_cost = 0.01;
  double living_cost = 0.01;
  double bump_cost = 0.1;

  bool operator==(const EnvConfig&) const = default;
};

// Throws ConfigError for an unknown name or invalid parameters.
std::unique_ptr<Environment> make_env(const EnvConfig& config);

}  // namespace bdqn
