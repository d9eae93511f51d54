#include "bdqn/agent.hpp"

#include <algorithm>
#include <cmath>

#include "bdqn/error.hpp"

namespace bdqn {

std::string to_string(AgentFamily f) {
  switch (f) {
    case AgentFamily::bandit: return "bandit";
    case AgentFamily::static_arr: return "static";
    case AgentFamily::discrete: return "dfdqn";
  }
  return "unknown";
}

AgentFamily family_from_string(const std::string& name) {
  if (name == "bandit") return AgentFamily::bandit;
  if (name == "static") return AgentFamily::static_arr;
  if (name == "dfdqn") return AgentFamily::discrete;
  throw ConfigError("agent.family: unknown family '" + name + "' (bandit, static, dfdqn)");
}

double EpsilonSchedule::at(long decisions) const {
  if (decay_decisions <= 0 || decisions >= decay_decisions) return end;
  const double frac = static_cast<double>(decisions) / static_cast<double>(decay_decisions);
  return start + (end - start) * frac;
}

void AgentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("agent.gamma must be in (0, 1]");
  if (d_max < 1) fail("agent.d_max must be >= 1");
  if (!(epsilon.start >= 0.0 && epsilon.start <= 1.0)) fail("agent.epsilon.start must be in [0, 1]");
  if (!(epsilon.end >= 0.0 && epsilon.end <= 1.0)) fail("agent.epsilon.end must be in [0, 1]");
  if (epsilon.decay_decisions < 0) fail("agent.epsilon.decay_decisions must be >= 0");
  if (!(lr_q >= 0.0) || !std::isfinite(lr_q)) fail("agent.lr_q must be finite and >= 0");
  if (!(lr_bandit >= 0.0) || !std::isfinite(lr_bandit)) fail("agent.lr_bandit must be finite and >= 0");
  if (batch_size < 1) fail("agent.batch_size must be >= 1");
  if (replay_capacity < batch_size) fail("agent.replay_capacity must be >= batch_size");
  if (target_sync_interval < 1) fail("agent.target_sync_interval must be >= 1");
  if (trunk.empty()) fail("agent.network.trunk needs at least one layer");
  auto positive = [](const std::vector<std::size_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::size_t w) { return w > 0; });
  };
  if (!positive(trunk) || !positive(q_head) || !positive(duration_head)) {
    fail("agent.network widths must be positive");
  }
  if (!(baseline_rate > 0.0 && baseline_rate <= 1.0)) fail("agent.baseline_rate must be in (0, 1]");
  if (family == AgentFamily::static_arr && (arr < 1 || arr > d_max)) {
    fail("agent.arr must be in 1..d_max");
  }
  if (family == AgentFamily::discrete) {
    if (duration_options.empty()) fail("agent.duration_options must be nonempty");
    for (std::size_t i = 0; i < duration_options.size(); ++i) {
      if (duration_options[i] < 1 || duration_options[i] > d_max) {
        fail("agent.duration_options entries must be in 1..d_max");
      }
      if (i > 0 && duration_options[i] <= duration_options[i - 1]) {
        fail("agent.duration_options must be strictly increasing");
      }
    }
  }
}

namespace {

int argmax_lowest(const std::vector<double>& v) {
  int best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[static_cast<std::size_t>(best)]) best = static_cast<int>(i);
  }
  return best;
}

std::size_t q_outputs_for(const AgentConfig& c, const EnvSpec& env) {
  const auto actions = static_cast<std::size_t>(env.action_count);
  return c.family == AgentFamily::discrete ? actions * c.duration_options.size() : actions;
}

}  // namespace

TdGradient td_loss_and_gradient(const NetworkParams& online, const NetworkParams& target,
                                std::span<const Transition> batch, double gamma) {
  TdGradient g;
  g.trunk = zeros_like(online.trunk);
  g.q_head = zeros_like(online.q_head);

  std::vector<double> targets(batch.size());
  std::vector<bool> keep(batch.size(), false);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Transition& t = batch[i];
    double y = t.reward;
    if (!t.terminal) {
      const auto next_q = q_values(target, t.next_state);
      y += std::pow(gamma, t.frames_elapsed) * *std::max_element(next_q.begin(), next_q.end());
    }
    targets[i] = y;
    keep[i] = std::isfinite(y);
    if (keep[i]) ++g.used; else ++g.dropped;
  }
  if (g.used == 0) return g;

  const double n = static_cast<double>(g.used);
  ForwardCache trunk_cache;
  ForwardCache head_cache;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (!keep[i]) continue;
    const Transition& t = batch[i];
    const auto features = forward(online.trunk, t.state, &trunk_cache);
    const auto q = forward(online.q_head, features, &head_cache);
    if (t.q_index < 0 || static_cast<std::size_t>(t.q_index) >= q.size()) {
      throw DimensionError("td_update: transition Q index outside Q head");
    }
    const double diff = q[static_cast<std::size_t>(t.q_index)] - targets[i];
    g.loss += diff * diff;
    std::vector<double> grad_q(q.size(), 0.0);
    grad_q[static_cast<std::size_t>(t.q_index)] = 2.0 * diff / n;
    const auto grad_features = backward(online.q_head, head_cache, grad_q, g.q_head);
    backward(online.trunk, trunk_cache, grad_features, g.trunk);
  }
  g.loss /= n;
  return g;
}

LogProbGradient log_prob_gradient(const NetworkParams& net, std::span<const double> state,
                                  int duration, bool include_trunk) {
  if (!net.has_duration_head()) throw UsageError("log_prob_gradient: no duration head");
  if (duration < 1 || static_cast<std::size_t>(duration) > net.duration_width()) {
    throw UsageError("log_prob_gradient: duration outside 1..d_max");
  }
  LogProbGradient out;
  out.head = zeros_like(net.duration_head);
  if (include_trunk) out.trunk = zeros_like(net.trunk);

  ForwardCache trunk_cache;
  ForwardCache head_cache;
  const auto features = forward(net.trunk, state, &trunk_cache);
  const auto logits = forward(net.duration_head, features, &head_cache);
  const auto probs = softmax(logits);
  const auto arm = static_cast<std::size_t>(duration - 1);

  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - top);
  const double log_prob = logits[arm] - top - std::log(sum);
  if (log_prob < kMinLogProb) {
    out.log_prob = kMinLogProb;
    out.clamped = true;
    return out;
  }
  out.log_prob = log_prob;

  std::vector<double> grad_logits(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) grad_logits[i] = (i == arm ? 1.0 : 0.0) - probs[i];
  const auto grad_features = backward(net.duration_head, head_cache, grad_logits, out.head);
  if (include_trunk) backward(net.trunk, trunk_cache, grad_features, out.trunk);
  return out;
}

Agent::Agent(AgentConfig config, EnvSpec env, std::uint64_t seed)
    : config_(std::move(config)),
      env_(env),
      durations_(config_.d_max),
      streams_(seed),
      replay_(std::max<std::size_t>(config_.replay_capacity, 1), config_.d_max) {
  config_.validate();
  if (env_.action_count < 2 || env_.observation_width < 1) {
    throw DimensionError("agent: environment needs >= 2 actions and a non-empty observation");
  }
  NetworkShape shape;
  shape.input_width = static_cast<std::size_t>(env_.observation_width);
  shape.trunk = config_.trunk;
  shape.q_head = config_.q_head;
  shape.duration_head = config_.duration_head;
  shape.q_outputs = q_outputs_for(config_, env_);
  shape.duration_outputs =
      config_.family == AgentFamily::bandit ? static_cast<std::size_t>(config_.d_max) : 0;
  online_ = build_network(shape, streams_);
  target_ = online_;
  epsilon_ = config_.epsilon.at(0);
}

Agent::Agent(AgentConfig config, EnvSpec env, NetworkParams online, std::uint64_t seed)
    : config_(std::move(config)),
      env_(env),
      durations_(config_.d_max),
      streams_(seed),
      online_(std::move(online)),
      replay_(std::max<std::size_t>(config_.replay_capacity, 1), config_.d_max) {
  config_.validate();
  online_.validate();
  if (online_.input_width() != static_cast<std::size_t>(env_.observation_width)) {
    throw DimensionError("agent: network input width does not match the environment");
  }
  if (online_.q_width() != q_outputs_for(config_, env_)) {
    throw DimensionError("agent: Q head width does not match the environment/family");
  }
  const bool wants_head = config_.family == AgentFamily::bandit;
  if (wants_head != online_.has_duration_head() ||
      (wants_head && online_.duration_width() != static_cast<std::size_t>(config_.d_max))) {
    throw DimensionError("agent: duration head width must equal d_max for the bandit family");
  }
  target_ = online_;
  epsilon_ = config_.epsilon.at(0);
}

void Agent::set_epsilon(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ConfigError("epsilon must be in [0, 1]");
  epsilon_ = eps;
}

int Agent::q_width() const { return static_cast<int>(online_.q_width()); }

void Agent::check_state(std::span<const double> state) const {
  if (state.size() != online_.input_width()) {
    throw DimensionError("agent: state width " + std::to_string(state.size()) +
                         " does not match network input " +
                         std::to_string(online_.input_width()));
  }
}

std::vector<double> Agent::q_values(std::span<const double> state) const {
  check_state(state);
  return bdqn::q_values(online_, state);
}

std::vector<double> Agent::target_q_values(std::span<const double> state) const {
  check_state(state);
  return bdqn::q_values(target_, state);
}

int Agent::greedy_index(std::span<const double> state) const {
  return argmax_lowest(q_values(state));
}

int Agent::select_action(std::span<const double> state, Rng& rng) const {
  return select_action(state, rng, epsilon_);
}

int Agent::select_action(std::span<const double> state, Rng& rng, double epsilon) const {
  if (uniform01(rng) < epsilon) {
    check_state(state);
    return static_cast<int>(uniform_index(rng, static_cast<std::size_t>(q_width())));
  }
  return greedy_index(state);
}

DurationPolicy Agent::duration_policy(std::span<const double> state) const {
  check_state(state);
  return {softmax(duration_logits(online_, state))};
}

int Agent::sample_duration(std::span<const double> state, Rng& rng) const {
  const auto policy = duration_policy(state);
  return static_cast<int>(sample_categorical(rng, policy.probs)) + 1;
}

Decision Agent::decide(std::span<const double> state, int q_index, Rng& duration_rng) const {
  Decision d;
  d.q_index = q_index;
  switch (config_.family) {
    case AgentFamily::bandit:
      d.action = q_index;
      d.duration = sample_duration(state, duration_rng);
      break;
    case AgentFamily::static_arr:
      d.action = q_index;
      d.duration = config_.arr;
      break;
    case AgentFamily::discrete: {
      const int options = static_cast<int>(config_.duration_options.size());
      d.action = q_index / options;
      d.duration = config_.duration_options[static_cast<std::size_t>(q_index % options)];
      break;
    }
  }
  return d;
}

double Agent::bandit_reward(std::span<const double> s_before, int q_index,
                            std::span<const double> s_after, bool after_terminal) const {
  const auto before = q_values(s_before);
  if (q_index < 0 || static_cast<std::size_t>(q_index) >= before.size()) {
    throw UsageError("bandit_reward: action outside Q head");
  }
  double after = 0.0;
  if (!after_terminal) {
    const auto q_after = q_values(s_after);
    after = *std::max_element(q_after.begin(), q_after.end());
  }
  return after - before[static_cast<std::size_t>(q_index)];
}

bool Agent::bandit_update(std::span<const double> state, int duration, double duration_reward) {
  if (!durations_.contains(duration)) throw UsageError("bandit_update: duration outside 1..d_max");
  if (!std::isfinite(duration_reward)) {
    ++rejected_updates_;
    return false;
  }
  check_state(state);
  const double coef = config_.bandit_baseline ? duration_reward - baseline_ : duration_reward;
  if (config_.bandit_baseline) baseline_ += config_.baseline_rate * (duration_reward - baseline_);
  if (coef == 0.0 || config_.lr_bandit == 0.0) return true;

  auto g = log_prob_gradient(online_, state, duration, config_.joint_bandit_training);
  if (g.clamped) return true;
  // Ascent on coef * log pi is descent on -coef * log pi.
  scale(g.head, -coef);
  if (config_.joint_bandit_training) {
    scale(g.trunk, -coef);
    if (!all_finite(g.head) || !all_finite(g.trunk)) {
      ++rejected_updates_;
      return false;
    }
    sgd_step(online_.trunk, g.trunk, config_.lr_bandit);
  }
  if (!sgd_step(online_.duration_head, g.head, config_.lr_bandit)) {
    ++rejected_updates_;
    return false;
  }
  return true;
}

double Agent::td_update(std::span<const Transition> batch) {
  if (batch.empty()) throw UsageError("td_update: empty batch");
  auto g = td_loss_and_gradient(online_, target_, batch, config_.gamma);
  dropped_transitions_ += g.dropped;
  if (g.used == 0) return 0.0;
  if (!all_finite(g.trunk) || !all_finite(g.q_head)) {
    ++rejected_updates_;
    return g.loss;
  }
  sgd_step(online_.q_head, g.q_head, config_.lr_q);
  sgd_step(online_.trunk, g.trunk, config_.lr_q);
  return g.loss;
}

void Agent::sync_target() { copy_q_path(online_, target_); }

void Agent::train(Environment& env, const TrainSchedule& schedule, const TrainHooks& hooks) {
  const EnvSpec spec = env.spec();
  if (spec.observation_width != env_.observation_width || spec.action_count != env_.action_count) {
    throw DimensionError("train: environment does not match the agent's dimensions");
  }
  Rng& env_rng = streams_.get(stream::kEnv);
  Rng& action_rng = streams_.get(stream::kAction);
  Rng& duration_rng = streams_.get(stream::kDuration);
  Rng& replay_rng = streams_.get(stream::kReplay);
  const std::size_t min_replay = std::max(config_.batch_size, config_.learning_starts);
  const bool bandit = config_.family == AgentFamily::bandit;

  while (decisions_ < schedule.decisions) {
    const EnvFrame first = env.reset(env_rng());
    std::vector<double> state = first.observation;

    MetricsRecord rec;
    rec.phase = "train";
    rec.seed = streams_.master_seed();
    rec.episode = episodes_;
    rec.duration_histogram.assign(static_cast<std::size_t>(config_.d_max), 0);
    const long rejected_before = rejected_updates_;
    const long dropped_before = dropped_transitions_;
    double loss_sum = 0.0;

    while (!env.episode_over()) {
      epsilon_ = config_.epsilon.at(decisions_);
      const int q_index = select_action(state, action_rng, epsilon_);
      const Decision decision = decide(state, q_index, duration_rng);
      SmdpOutcome out =
          execute_duration(env, decision.action, decision.duration, config_.gamma, durations_);
      const double duration_reward =
          bandit ? bandit_reward(state, q_index, out.next_observation, out.terminal) : 0.0;

      Transition t;
      t.state = state;
      t.action = decision.action;
      t.duration = decision.duration;
      t.reward = out.accumulated_reward;
      t.next_state = out.next_observation;
      t.frames_elapsed = out.frames_elapsed;
      t.terminal = out.terminal;
      t.truncated = out.truncated;
      t.bandit_reward = duration_reward;
      t.q_index = q_index;
      replay_.push(t);

      if (replay_.size() >= min_replay) {
        const auto batch = replay_.sample(config_.batch_size, replay_rng);
        loss_sum += td_update(*batch);
        ++rec.td_updates;
      } else {
        ++rec.skipped_updates;
      }
      if (bandit) bandit_update(state, decision.duration, duration_reward);

      ++decisions_;
      if (decisions_ % config_.target_sync_interval == 0) sync_target();

      ++rec.decisions;
      ++rec.duration_histogram[static_cast<std::size_t>(decision.duration - 1)];
      rec.frames += out.frames_elapsed;
      rec.score += out.undiscounted_reward;

      if (hooks.on_decision) {
        hooks.on_decision({episodes_, state, decision, out.frames_elapsed, out.accumulated_reward,
                           out.terminal});
      }
      state = std::move(out.next_observation);

      if (schedule.eval_interval > 0 && decisions_ % schedule.eval_interval == 0) {
        const auto result = evaluate(env, schedule.eval_episodes, schedule.eval_seed, "eval");
        if (hooks.on_record) {
          for (const auto& r : result.episodes) hooks.on_record(r);
        }
      }
    }

    rec.decisions_total = decisions_;
    rec.epsilon = epsilon_;
    rec.mean_td_loss = rec.td_updates > 0 ? loss_sum / static_cast<double>(rec.td_updates) : 0.0;
    rec.rejected_updates = rejected_updates_ - rejected_before;
    rec.dropped_transitions = dropped_transitions_ - dropped_before;
    ++episodes_;
    if (hooks.on_record) hooks.on_record(rec);
  }
}

EvalResult Agent::evaluate(const Environment& env, int episodes, std::uint64_t seed,
                           const std::string& phase) const {
  if (episodes < 1) throw ConfigError("evaluate: need at least one episode");
  const EnvSpec spec = env.spec();
  if (spec.observation_width != env_.observation_width || spec.action_count != env_.action_count) {
    throw DimensionError("evaluate: environment does not match the agent's dimensions");
  }
  auto sim = env.clone();
  RngStreams eval_streams(seed);
  Rng& env_rng = eval_streams.get(stream::kEnv);
  Rng& duration_rng = eval_streams.get(stream::kDuration);

  EvalResult result;
  double total = 0.0;
  for (int ep = 0; ep < episodes; ++ep) {
    std::vector<double> state = sim->reset(env_rng()).observation;
    MetricsRecord rec;
    rec.phase = phase;
    rec.seed = streams_.master_seed();
    rec.episode = ep;
    rec.decisions_total = decisions_;
    rec.duration_histogram.assign(static_cast<std::size_t>(config_.d_max), 0);
    while (!sim->episode_over()) {
      const Decision d = decide(state, greedy_index(state), duration_rng);
      SmdpOutcome out = execute_duration(*sim, d.action, d.duration, config_.gamma, durations_);
      ++rec.decisions;
      ++rec.duration_histogram[static_cast<std::size_t>(d.duration - 1)];
      rec.frames += out.frames_elapsed;
      rec.score += out.undiscounted_reward;
      state = std::move(out.next_observation);
    }
    total += rec.score;
    result.episodes.push_back(std::move(rec));
  }
  result.mean_score = total / static_cast<double>(episodes);
  return result;
}

void Agent::restore(NetworkParams online, NetworkParams target, long decisions, long episodes,
                    double epsilon, double baseline) {
  online.validate();
  target.validate();
  if (online.input_width() != online_.input_width() || online.q_width() != online_.q_width() ||
      online.duration_width() != online_.duration_width() ||
      target.q_width() != online_.q_width()) {
    throw DimensionError("restore: network shapes do not match the agent");
  }
  online_ = std::move(online);
  target_ = std::move(target);
  decisions_ = decisions;
  episodes_ = episodes;
  set_epsilon(epsilon);
  baseline_ = baseline;
}

}  // namespace bdqn
