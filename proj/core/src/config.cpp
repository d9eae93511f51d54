#include "bdqn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "bdqn/error.hpp"

namespace bdqn {

namespace {

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

// Walks a YAML tree, recording every problem instead of stopping at the first.
class Reader {
 public:
  std::vector<std::string> problems;

  bool check_map(const YAML::Node& node, const std::string& path,
                 const std::set<std::string>& allowed) {
    if (!node.IsMap()) {
      problems.push_back(path + ": expected a mapping");
      return false;
    }
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        problems.push_back((path.empty() ? "" : path + ".") + key + ": unknown key");
      }
    }
    return true;
  }

  template <typename T>
  void read(const YAML::Node& parent, const std::string& path, const std::string& key, T& out) {
    const YAML::Node node = parent[key];
    if (!node) return;
    try {
      out = node.as<T>();
    } catch (const YAML::Exception&) {
      problems.push_back(qualify(path, key) + ": wrong type");
    }
  }

  void range(bool ok, const std::string& field, const std::string& rule) {
    if (!ok) problems.push_back(field + ": " + rule);
  }

  static std::string qualify(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }
};

const std::set<std::string> kTopKeys = {"format_version", "env",  "agent",        "training",
                                        "seeds",          "output_dir", "parallel_runs"};
const std::set<std::string> kEnvCommon = {"name", "max_frames"};
const std::set<std::string> kAgentKeys = {
    "family",        "gamma",          "d_max",         "epsilon",
    "lr_q",          "lr_bandit",      "replay_capacity", "batch_size",
    "learning_starts", "target_sync_interval", "network", "joint_bandit_training",
    "bandit_baseline", "baseline_rate", "arr",           "duration_options"};
const std::set<std::string> kEpsilonKeys = {"start", "end", "decay_decisions"};
const std::set<std::string> kNetworkKeys = {"trunk", "q_head", "duration_head"};
const std::set<std::string> kTrainingKeys = {"decisions", "eval_interval", "eval_episodes",
                                             "eval_seed"};

std::set<std::string> env_keys(const std::string& name) {
  std::set<std::string> keys = kEnvCommon;
  if (name == "chain") keys.insert("chain_length");
  if (name == "corridor") keys.insert({"living_cost", "bump_cost"});
  if (name == "reflex") keys.insert({"min_delay", "max_delay", "window", "wait_cost"});
  return keys;
}

void read_env(Reader& r, const YAML::Node& node, EnvConfig& env) {
  if (!node) {
    r.problems.push_back("env: missing section (env.name is required)");
    return;
  }
  if (!node.IsMap()) {
    r.problems.push_back("env: expected a mapping");
    return;
  }
  if (!node["name"]) r.problems.push_back("env.name: required");
  r.read(node, "env", "name", env.name);
  if (env.name != "chain" && env.name != "corridor" && env.name != "reflex") {
    r.problems.push_back("env.name: unknown environment '" + env.name + "' (chain, corridor, reflex)");
    return;
  }
  r.check_map(node, "env", env_keys(env.name));
  r.read(node, "env", "max_frames", env.max_frames);
  r.read(node, "env", "chain_length", env.chain_length);
  r.read(node, "env", "living_cost", env.living_cost);
  r.read(node, "env", "bump_cost", env.bump_cost);
  r.read(node, "env", "min_delay", env.min_delay);
  r.read(node, "env", "max_delay", env.max_delay);
  r.read(node, "env", "window", env.window);
  r.read(node, "env", "wait_cost", env.wait_cost);

  r.range(env.max_frames >= 0, "env.max_frames", "must be >= 0 (0 = environment default)");
  r.range(env.chain_length >= 2, "env.chain_length", "must be >= 2");
  r.range(env.living_cost >= 0.0, "env.living_cost", "must be >= 0");
  r.range(env.bump_cost >= 0.0, "env.bump_cost", "must be >= 0");
  r.range(env.min_delay >= 1, "env.min_delay", "must be >= 1");
  r.range(env.max_delay >= env.min_delay, "env.max_delay", "must be >= env.min_delay");
  r.range(env.window >= 1, "env.window", "must be >= 1");
  r.range(env.wait_cost >= 0.0, "env.wait_cost", "must be >= 0");
}

void read_agent(Reader& r, const YAML::Node& node, AgentConfig& a) {
  if (!node) return;
  if (!r.check_map(node, "agent", kAgentKeys)) return;
  std::string family = to_string(a.family);
  r.read(node, "agent", "family", family);
  try {
    a.family = family_from_string(family);
  } catch (const ConfigError& e) {
    r.problems.push_back(e.what());
  }
  r.read(node, "agent", "gamma", a.gamma);
  r.read(node, "agent", "d_max", a.d_max);
  r.read(node, "agent", "lr_q", a.lr_q);
  r.read(node, "agent", "lr_bandit", a.lr_bandit);
  r.read(node, "agent", "replay_capacity", a.replay_capacity);
  r.read(node, "agent", "batch_size", a.batch_size);
  r.read(node, "agent", "learning_starts", a.learning_starts);
  r.read(node, "agent", "target_sync_interval", a.target_sync_interval);
  r.read(node, "agent", "joint_bandit_training", a.joint_bandit_training);
  r.read(node, "agent", "bandit_baseline", a.bandit_baseline);
  r.read(node, "agent", "baseline_rate", a.baseline_rate);
  r.read(node, "agent", "arr", a.arr);
  r.read(node, "agent", "duration_options", a.duration_options);
  if (const auto eps = node["epsilon"]) {
    if (r.check_map(eps, "agent.epsilon", kEpsilonKeys)) {
      r.read(eps, "agent.epsilon", "start", a.epsilon.start);
      r.read(eps, "agent.epsilon", "end", a.epsilon.end);
      r.read(eps, "agent.epsilon", "decay_decisions", a.epsilon.decay_decisions);
    }
  }
  if (const auto net = node["network"]) {
    if (r.check_map(net, "agent.network", kNetworkKeys)) {
      r.read(net, "agent.network", "trunk", a.trunk);
      r.read(net, "agent.network", "q_head", a.q_head);
      r.read(net, "agent.network", "duration_head", a.duration_head);
    }
  }

  r.range(a.gamma > 0.0 && a.gamma <= 1.0, "agent.gamma", "must be in (0, 1]");
  r.range(a.d_max >= 1, "agent.d_max", "must be >= 1");
  r.range(a.epsilon.start >= 0.0 && a.epsilon.start <= 1.0, "agent.epsilon.start", "must be in [0, 1]");
  r.range(a.epsilon.end >= 0.0 && a.epsilon.end <= 1.0, "agent.epsilon.end", "must be in [0, 1]");
  r.range(a.epsilon.decay_decisions >= 0, "agent.epsilon.decay_decisions", "must be >= 0");
  r.range(a.lr_q >= 0.0, "agent.lr_q", "must be >= 0");
  r.range(a.lr_bandit >= 0.0, "agent.lr_bandit", "must be >= 0");
  r.range(a.batch_size >= 1, "agent.batch_size", "must be >= 1");
  r.range(a.replay_capacity >= a.batch_size, "agent.replay_capacity", "must be >= batch_size");
  r.range(a.target_sync_interval >= 1, "agent.target_sync_interval", "must be >= 1");
  r.range(a.baseline_rate > 0.0 && a.baseline_rate <= 1.0, "agent.baseline_rate", "must be in (0, 1]");
  r.range(!a.trunk.empty(), "agent.network.trunk", "needs at least one layer");
  if (a.family == AgentFamily::static_arr) {
    r.range(a.arr >= 1 && a.arr <= a.d_max, "agent.arr", "must be in 1..d_max");
  }
  if (a.family == AgentFamily::discrete) {
    bool ok = !a.duration_options.empty();
    for (std::size_t i = 0; i < a.duration_options.size(); ++i) {
      ok = ok && a.duration_options[i] >= 1 && a.duration_options[i] <= a.d_max &&
           (i == 0 || a.duration_options[i] > a.duration_options[i - 1]);
    }
    r.range(ok, "agent.duration_options", "must be nonempty, strictly increasing, within 1..d_max");
  }
}

void read_training(Reader& r, const YAML::Node& node, TrainSchedule& t) {
  if (!node) return;
  if (!r.check_map(node, "training", kTrainingKeys)) return;
  r.read(node, "training", "decisions", t.decisions);
  r.read(node, "training", "eval_interval", t.eval_interval);
  r.read(node, "training", "eval_episodes", t.eval_episodes);
  r.read(node, "training", "eval_seed", t.eval_seed);
  r.range(t.decisions >= 1, "training.decisions", "must be >= 1");
  r.range(t.eval_interval >= 0, "training.eval_interval", "must be >= 0");
  r.range(t.eval_episodes >= 1, "training.eval_episodes", "must be >= 1");
}

}  // namespace

ConfigViolations::ConfigViolations(std::vector<std::string> problems)
    : ConfigError("invalid config: " + join(problems, "; ")), problems_(std::move(problems)) {}

ExperimentConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw FormatError(std::string("config parse error: ") + e.what());
  }
  if (!root.IsMap()) throw FormatError("config: top level must be a mapping");

  ExperimentConfig c;
  Reader r;
  r.check_map(root, "", kTopKeys);
  int version = kConfigFormatVersion;
  r.read(root, "", "format_version", version);
  r.range(version == kConfigFormatVersion, "format_version",
          "unsupported (expected " + std::to_string(kConfigFormatVersion) + ")");
  read_env(r, root["env"], c.env);
  read_agent(r, root["agent"], c.agent);
  read_training(r, root["training"], c.training);
  r.read(root, "", "seeds", c.seeds);
  r.read(root, "", "output_dir", c.output_dir);
  r.read(root, "", "parallel_runs", c.parallel_runs);
  r.range(!c.seeds.empty(), "seeds", "must list at least one seed");
  r.range(std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() == c.seeds.size(),
          "seeds", "must be distinct");
  r.range(!c.output_dir.empty(), "output_dir", "must be nonempty");
  r.range(c.parallel_runs >= 1, "parallel_runs", "must be >= 1");

  if (r.problems.empty()) {
    try {
      c.agent.validate();
      make_env(c.env);
    } catch (const ConfigError& e) {
      r.problems.push_back(e.what());
    }
  }
  if (!r.problems.empty()) throw ConfigViolations(std::move(r.problems));
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void apply_env_overrides(ExperimentConfig& config) {
  if (const char* dir = std::getenv(kOutputDirEnvVar); dir && *dir) config.output_dir = dir;
}

nlohmann::ordered_json to_json(const AgentConfig& c) {
  nlohmann::ordered_json j;
  j["family"] = to_string(c.family);
  j["gamma"] = c.gamma;
  j["d_max"] = c.d_max;
  j["epsilon"] = {{"start", c.epsilon.start},
                  {"end", c.epsilon.end},
                  {"decay_decisions", c.epsilon.decay_decisions}};
  j["lr_q"] = c.lr_q;
  j["lr_bandit"] = c.lr_bandit;
  j["replay_capacity"] = c.replay_capacity;
  j["batch_size"] = c.batch_size;
  j["learning_starts"] = c.learning_starts;
  j["target_sync_interval"] = c.target_sync_interval;
  j["network"] = {{"trunk", c.trunk}, {"q_head", c.q_head}, {"duration_head", c.duration_head}};
  j["joint_bandit_training"] = c.joint_bandit_training;
  j["bandit_baseline"] = c.bandit_baseline;
  j["baseline_rate"] = c.baseline_rate;
  j["arr"] = c.arr;
  j["duration_options"] = c.duration_options;
  return j;
}

AgentConfig agent_config_from_json(const nlohmann::json& j) {
  AgentConfig c;
  c.family = family_from_string(j.at("family").get<std::string>());
  c.gamma = j.at("gamma").get<double>();
  c.d_max = j.at("d_max").get<int>();
  c.epsilon.start = j.at("epsilon").at("start").get<double>();
  c.epsilon.end = j.at("epsilon").at("end").get<double>();
  c.epsilon.decay_decisions = j.at("epsilon").at("decay_decisions").get<long>();
  c.lr_q = j.at("lr_q").get<double>();
  c.lr_bandit = j.at("lr_bandit").get<double>();
  c.replay_capacity = j.at("replay_capacity").get<std::size_t>();
  c.batch_size = j.at("batch_size").get<std::size_t>();
  c.learning_starts = j.at("learning_starts").get<std::size_t>();
  c.target_sync_interval = j.at("target_sync_interval").get<long>();
  c.trunk = j.at("network").at("trunk").get<std::vector<std::size_t>>();
  c.q_head = j.at("network").at("q_head").get<std::vector<std::size_t>>();
  c.duration_head = j.at("network").at("duration_head").get<std::vector<std::size_t>>();
  c.joint_bandit_training = j.at("joint_bandit_training").get<bool>();
  c.bandit_baseline = j.at("bandit_baseline").get<bool>();
  c.baseline_rate = j.at("baseline_rate").get<double>();
  c.arr = j.at("arr").get<int>();
  c.duration_options = j.at("duration_options").get<std::vector<int>>();
  c.validate();
  return c;
}

nlohmann::ordered_json to_json(const EnvConfig& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["max_frames"] = c.max_frames;
  j["chain_length"] = c.chain_length;
  j["min_delay"] = c.min_delay;
  j["max_delay"] = c.max_delay;
  j["window"] = c.window;
  j["wait_cost"] = c.wait_cost;
  j["living_cost"] = c.living_cost;
  j["bump_cost"] = c.bump_cost;
  return j;
}

EnvConfig env_config_from_json(const nlohmann::json& j) {
  EnvConfig c;
  c.name = j.at("name").get<std::string>();
  c.max_frames = j.at("max_frames").get<int>();
  c.chain_length = j.at("chain_length").get<int>();
  c.min_delay = j.at("min_delay").get<int>();
  c.max_delay = j.at("max_delay").get<int>();
  c.window = j.at("window").get<int>();
  c.wait_cost = j.at("wait_cost").get<double>();
  c.living_cost = j.at("living_cost").get<double>();
  c.bump_cost = j.at("bump_cost").get<double>();
  return c;
}

nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["format_version"] = kConfigFormatVersion;
  j["env"] = to_json(c.env);
  j["agent"] = to_json(c.agent);
  j["training"] = {{"decisions", c.training.decisions},
                   {"eval_interval", c.training.eval_interval},
                   {"eval_episodes", c.training.eval_episodes},
                   {"eval_seed", c.training.eval_seed}};
  j["seeds"] = c.seeds;
  j["output_dir"] = c.output_dir;
  j["parallel_runs"] = c.parallel_runs;
  return j;
}

}  // namespace bdqn
