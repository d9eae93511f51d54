#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bdqn/envs.hpp"
#include "bdqn/metrics.hpp"
#include "bdqn/network.hpp"
#include "bdqn/replay.hpp"
#include "bdqn/rng.hpp"

namespace bdqn {

// bandit: Q head over actions plus a learned duration head.
// static_arr: Q head over actions, every action held for `arr` frames.
// discrete: Q head over (action, duration option) pairs, no duration head.
enum class AgentFamily { bandit, static_arr, discrete };

std::string to_string(AgentFamily f);
AgentFamily family_from_string(const std::string& name);

// Linear anneal from start to end over decay_decisions decisions.
struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  long decay_decisions = 5000;

  double at(long decisions) const;
  bool operator==(const EpsilonSchedule&) const = default;
};

struct AgentConfig {
  AgentFamily family = AgentFamily::bandit;
  double gamma = 0.95;
  int d_max = 10;
  EpsilonSchedule epsilon;
  double lr_q = 0.01;
  double lr_bandit = 0.05;
  std::size_t replay_capacity = 10000;
  std::size_t batch_size = 32;
  // Minimum replay size before TD updates start; never below batch_size.
  std::size_t learning_starts = 0;
  long target_sync_interval = 200;
  std::vector<std::size_t> trunk{64};
  std::vector<std::size_t> q_head{64};
  std::vector<std::size_t> duration_head{32};
  // Let the policy gradient flow into the shared trunk.
  bool joint_bandit_training = false;
  // Subtract a running mean of the bandit reward before the policy-gradient step.
  bool bandit_baseline = false;
  double baseline_rate = 0.01;
  // static_arr only.
  int arr = 4;
  // discrete only; strictly increasing, each in 1..d_max.
  std::vector<int> duration_options{2, 8};

  // Throws ConfigError naming the first offending field.
  void validate() const;
  bool operator==(const AgentConfig&) const = default;
};

struct DurationPolicy {
  // probs[i] is the probability of duration i + 1.
  std::vector<double> probs;
};

struct Decision {
  int action = 0;
  int duration = 1;
  // Q head output that chose the decision.
  int q_index = 0;
};

// Per-decision trace for trajectory comparisons.
struct DecisionTrace {
  long episode = 0;
  std::vector<double> state;
  Decision decision;
  int frames_elapsed = 0;
  double reward = 0.0;
  bool terminal = false;
};

struct TrainSchedule {
  long decisions = 10000;
  // Periodic greedy evaluation every this many decisions; 0 disables.
  long eval_interval = 0;
  int eval_episodes = 10;
  std::uint64_t eval_seed = 1000;
};

struct TrainHooks {
  std::function<void(const MetricsRecord&)> on_record;
  std::function<void(const DecisionTrace&)> on_decision;
};

struct EvalResult {
  double mean_score = 0.0;
  std::vector<MetricsRecord> episodes;
};

// Loss and gradients of the TD objective for one batch.
struct TdGradient {
  double loss = 0.0;
  GradientBundle trunk;
  GradientBundle q_head;
  long used = 0;
  long dropped = 0;
};

// mean_i (y_i - Q(s_i, a_i))^2 with y = r + gamma^frames * max_a Q_target(s', a)
// (no bootstrap on terminal). Transitions with a non-finite target are dropped.
TdGradient td_loss_and_gradient(const NetworkParams& online, const NetworkParams& target,
                                std::span<const Transition> batch, double gamma);

// Log-probability of `duration` under the duration policy (clamped below at
// ln 1e-12) and its gradient with respect to the duration head, plus the
// trunk when `include_trunk` is set.
struct LogProbGradient {
  double log_prob = 0.0;
  bool clamped = false;
  GradientBundle head;
  GradientBundle trunk;
};
LogProbGradient log_prob_gradient(const NetworkParams& net, std::span<const double> state,
                                  int duration, bool include_trunk);

inline constexpr double kMinLogProb = -27.631021115928547;  // ln(1e-12)

class Agent {
 public:
  // Builds and initializes networks from the config; `seed` is the master
  // seed of every named RNG stream.
  Agent(AgentConfig config, EnvSpec env, std::uint64_t seed);
  // Uses caller-supplied weights (target starts as a copy).
  Agent(AgentConfig config, EnvSpec env, NetworkParams online, std::uint64_t seed);

  const AgentConfig& config() const { return config_; }
  const EnvSpec& env_spec() const { return env_; }
  const NetworkParams& online() const { return online_; }
  const NetworkParams& target() const { return target_; }
  NetworkParams& online_mut() { return online_; }
  RngStreams& streams() { return streams_; }
  const RngStreams& streams() const { return streams_; }
  const ReplayMemory& replay() const { return replay_; }

  long decisions() const { return decisions_; }
  long episodes() const { return episodes_; }
  double epsilon() const { return epsilon_; }
  void set_epsilon(double eps);
  double bandit_baseline_value() const { return baseline_; }

  // Width of the Q head: actions, or action/option pairs for `discrete`.
  int q_width() const;

  std::vector<double> q_values(std::span<const double> state) const;
  std::vector<double> target_q_values(std::span<const double> state) const;
  // Lowest index among maxima.
  int greedy_index(std::span<const double> state) const;
  // Epsilon-greedy over the Q head. One uniform draw decides exploration;
  // exploring draws a second uniform index.
  int select_action(std::span<const double> state, Rng& rng) const;
  int select_action(std::span<const double> state, Rng& rng, double epsilon) const;

  // Bandit family only.
  DurationPolicy duration_policy(std::span<const double> state) const;
  int sample_duration(std::span<const double> state, Rng& rng) const;

  // Maps a Q index to an (action, duration) pair for this family. For the
  // bandit family the duration is drawn from the duration policy with `duration_rng`.
  Decision decide(std::span<const double> state, int q_index, Rng& duration_rng) const;

  // max_a Q(s_after, a) - Q(s_before, q_index) on the online network. A
  // terminal s_after has value 0.
  double bandit_reward(std::span<const double> s_before, int q_index,
                       std::span<const double> s_after, bool after_terminal = false) const;

  // One ascent step along duration_reward * grad log pi(duration | state).
  // Returns false when the update was rejected for a non-finite gradient.
  bool bandit_update(std::span<const double> state, int duration, double duration_reward);

  // One SGD step on the TD loss; returns the pre-step loss. Empty-after-drop
  // batches return 0 without updating.
  double td_update(std::span<const Transition> batch);

  void sync_target();

  // Runs the decision loop until at least schedule.decisions decisions have
  // been taken (the budget is checked at episode boundaries).
  void train(Environment& env, const TrainSchedule& schedule, const TrainHooks& hooks = {});

  // Greedy (epsilon = 0) evaluation on a copy of env using streams derived
  // from `seed`; the agent is not modified.
  EvalResult evaluate(const Environment& env, int episodes, std::uint64_t seed,
                      const std::string& phase = "final") const;

  // Restores training counters (checkpoint loading).
  void restore(NetworkParams online, NetworkParams target, long decisions, long episodes,
               double epsilon, double baseline);

 private:
  void check_state(std::span<const double> state) const;

  AgentConfig config_;
  EnvSpec env_;
  DurationSet durations_;
  RngStreams streams_;
  NetworkParams online_;
  NetworkParams target_;
  ReplayMemory replay_;
  long decisions_ = 0;
  long episodes_ = 0;
  double epsilon_ = 1.0;
  double baseline_ = 0.0;
  long rejected_updates_ = 0;
  long dropped_transitions_ = 0;
};

}  // namespace bdqn
