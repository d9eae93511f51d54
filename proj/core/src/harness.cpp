#include "bdqn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <cmath>
#include <map>
#include <optional>
#include <thread>

#include "bdqn/baselines.hpp"
#include "bdqn/checkpoint.hpp"
#include "bdqn/error.hpp"

namespace bdqn {

std::string metrics_file_name(std::uint64_t seed) {
  return "run_" + std::to_string(seed) + ".metrics.jsonl";
}
std::string scores_file_name(std::uint64_t seed) {
  return "run_" + std::to_string(seed) + ".scores.csv";
}
std::string checkpoint_file_name(std::uint64_t seed) {
  return "run_" + std::to_string(seed) + ".checkpoint.json";
}

namespace {

// Best of the periodic evaluation means and the final mean.
double best_score(const std::vector<MetricsRecord>& records, double final_score) {
  std::map<long, std::pair<double, long>> rounds;
  for (const auto& r : records) {
    if (r.phase != "eval") continue;
    auto& [sum, n] = rounds[r.decisions_total];
    sum += r.score;
    ++n;
  }
  double best = final_score;
  for (const auto& [when, acc] : rounds) best = std::max(best, acc.first / static_cast<double>(acc.second));
  return best;
}

struct RunArtifacts {
  SingleRun run;
  std::optional<nlohmann::ordered_json> checkpoint;
};

RunArtifacts train_seed(const ExperimentConfig& config, std::uint64_t seed, bool keep_trace) {
  RunArtifacts out;
  out.run.outcome.seed = seed;
  auto env = make_env(config.env);
  Agent agent = make_agent(config.agent, env->spec(), seed);
  TrainHooks hooks;
  hooks.on_record = [&](const MetricsRecord& r) { out.run.records.push_back(r); };
  if (keep_trace) hooks.on_decision = [&](const DecisionTrace& t) { out.run.trace.push_back(t); };
  agent.train(*env, config.training, hooks);
  const auto final_eval =
      agent.evaluate(*env, config.training.eval_episodes, config.training.eval_seed, "final");
  out.run.records.insert(out.run.records.end(), final_eval.episodes.begin(), final_eval.episodes.end());
  out.run.outcome.ok = true;
  out.run.outcome.final_score = final_eval.mean_score;
  out.run.outcome.best_score = best_score(out.run.records, final_eval.mean_score);
  out.run.outcome.decisions = agent.decisions();
  out.run.outcome.episodes = agent.episodes();
  out.checkpoint = checkpoint_to_json(agent, config.env);
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string family_label(const AgentConfig& a) {
  switch (a.family) {
    case AgentFamily::bandit: return "bandit";
    case AgentFamily::static_arr: return "static(arr=" + std::to_string(a.arr) + ")";
    case AgentFamily::discrete: {
      std::string s = "dfdqn{";
      for (std::size_t i = 0; i < a.duration_options.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a.duration_options[i]);
      }
      return s + "}";
    }
  }
  return "unknown";
}

}  // namespace

SingleRun run_single(const ExperimentConfig& config, std::uint64_t seed, bool keep_trace) {
  return train_seed(config, seed, keep_trace).run;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  ExperimentResult result;
  result.output_dir = config.output_dir;
  fs::create_directories(result.output_dir);

  const std::size_t n = config.seeds.size();
  result.runs.resize(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const auto seed = config.seeds[i];
      RunOutcome& outcome = result.runs[i];
      try {
        RunArtifacts art = train_seed(config, seed, false);
        {
          std::ofstream m(result.output_dir / metrics_file_name(seed));
          for (const auto& r : art.run.records) write_jsonl_line(m, r);
          if (!m) throw FormatError("failed writing metrics for seed " + std::to_string(seed));
        }
        {
          std::ofstream csv(result.output_dir / scores_file_name(seed));
          write_scores_csv(csv, art.run.records);
        }
        {
          std::ofstream ck(result.output_dir / checkpoint_file_name(seed));
          ck << art.checkpoint->dump(1) << '\n';
        }
        outcome = art.run.outcome;
      } catch (const std::exception& e) {
        outcome = RunOutcome{};
        outcome.seed = seed;
        outcome.ok = false;
        outcome.error = e.what();
      }
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.parallel_runs), n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  nlohmann::ordered_json s;
  s["format_version"] = kSummaryFormatVersion;
  s["created"] = utc_timestamp();
  s["label"] = family_label(config.agent);
  s["family"] = to_string(config.agent.family);
  s["protocol"] = {{"env", to_json(config.env)},
                   {"eval_episodes", config.training.eval_episodes},
                   {"eval_seed", config.training.eval_seed}};
  s["config"] = to_json(config);
  auto runs = nlohmann::ordered_json::array();
  std::vector<double> finals;
  std::vector<double> bests;
  for (const auto& r : result.runs) {
    nlohmann::ordered_json j;
    j["seed"] = r.seed;
    j["ok"] = r.ok;
    if (r.ok) {
      j["final_score"] = r.final_score;
      j["best_score"] = r.best_score;
      j["decisions"] = r.decisions;
      j["episodes"] = r.episodes;
      j["metrics_file"] = metrics_file_name(r.seed);
      j["checkpoint_file"] = checkpoint_file_name(r.seed);
      finals.push_back(r.final_score);
      bests.push_back(r.best_score);
    } else {
      j["error"] = r.error;
    }
    runs.push_back(std::move(j));
  }
  s["runs"] = std::move(runs);
  s["completed_runs"] = finals.size();
  s["failed_runs"] = n - finals.size();
  s["mean_final_score"] = finals.empty() ? 0.0 : mean_of(finals);
  s["std_final_score"] = sample_stddev(finals);
  s["mean_best_score"] = bests.empty() ? 0.0 : mean_of(bests);
  {
    std::ofstream out(result.output_dir / kSummaryFileName);
    out << s.dump(2) << '\n';
  }
  result.summary = std::move(s);
  return result;
}

EvalResult evaluate_checkpoint(const std::filesystem::path& checkpoint, const EnvConfig& env_config,
                               int episodes, std::uint64_t seed) {
  LoadedCheckpoint loaded = load_checkpoint(checkpoint);
  auto env = make_env(env_config);
  const EnvSpec a = env->spec();
  const EnvSpec b = loaded.agent.env_spec();
  if (a.action_count != b.action_count || a.observation_width != b.observation_width) {
    throw DimensionError("checkpoint was trained on an environment with " +
                         std::to_string(b.action_count) + " actions and observation width " +
                         std::to_string(b.observation_width) + "; '" + env_config.name + "' has " +
                         std::to_string(a.action_count) + " and " +
                         std::to_string(a.observation_width));
  }
  return loaded.agent.evaluate(*env, episodes, seed, "final");
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace bdqn
