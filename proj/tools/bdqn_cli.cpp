// bdqn: train, evaluate and report on duration-learning agents.

#include <cstdlib>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bdqn/checkpoint.hpp"
#include "bdqn/config.hpp"
#include "bdqn/error.hpp"
#include "bdqn/harness.hpp"

namespace {

// Exit codes.
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

int fail(const std::string& kind, const std::string& message, int code,
         const std::vector<std::string>& details = {}) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  if (!details.empty()) j["details"] = details;
  std::cerr << j.dump() << '\n';
  return code;
}

std::vector<bdqn::BucketRange> parse_buckets(const std::string& text) {
  // name:lo-hi[,name:lo-hi...]
  static const std::regex item(R"(\s*([A-Za-z_][A-Za-z0-9_]*):(\d+)-(\d+)\s*)");
  std::vector<bdqn::BucketRange> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    const auto part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::smatch m;
    if (!std::regex_match(part, m, item)) {
      throw bdqn::ConfigError("bad bucket '" + part + "', expected name:lo-hi");
    }
    out.push_back({m[1], std::stoi(m[2]), std::stoi(m[3])});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

int cmd_train(const std::string& config_path) {
  auto config = bdqn::load_config(config_path);
  bdqn::apply_env_overrides(config);
  const auto result = bdqn::run_experiment(config);
  nlohmann::ordered_json out;
  out["output_dir"] = result.output_dir.string();
  out["mean_final_score"] = result.summary["mean_final_score"];
  out["std_final_score"] = result.summary["std_final_score"];
  out["failed_runs"] = result.summary["failed_runs"];
  std::cout << out.dump() << '\n';
  for (const auto& r : result.runs) {
    if (!r.ok) {
      return fail("RunFailed", "seed " + std::to_string(r.seed) + ": " + r.error, kExitInternal);
    }
  }
  return 0;
}

int cmd_eval(const std::string& checkpoint, const std::string& config_path, int episodes,
             long long seed) {
  const auto config = bdqn::load_config(config_path);
  const int n = episodes > 0 ? episodes : config.training.eval_episodes;
  const auto s = seed >= 0 ? static_cast<std::uint64_t>(seed) : config.training.eval_seed;
  const auto result = bdqn::evaluate_checkpoint(checkpoint, config.env, n, s);
  nlohmann::ordered_json out;
  out["format_version"] = 1;
  out["episodes"] = n;
  out["seed"] = s;
  out["mean_score"] = result.mean_score;
  auto scores = nlohmann::ordered_json::array();
  for (const auto& r : result.episodes) scores.push_back(r.score);
  out["scores"] = scores;
  std::cout << out.dump() << '\n';
  return 0;
}

int cmd_durations(const std::string& run_dir, const std::string& buckets_text,
                  const std::string& phase, bool json) {
  const auto summary = bdqn::load_summary(run_dir);
  const int d_max = summary.at("config").at("agent").at("d_max").get<int>();
  const auto buckets = buckets_text.empty() ? bdqn::default_buckets(d_max) : parse_buckets(buckets_text);
  const auto report = bdqn::duration_report(bdqn::metrics_files_in(run_dir), buckets, phase);
  if (json) {
    nlohmann::ordered_json out;
    out["format_version"] = 1;
    out["phase"] = phase;
    auto bs = nlohmann::ordered_json::array();
    for (const auto& b : report.buckets) bs.push_back({{"name", b.name}, {"lo", b.lo}, {"hi", b.hi}});
    out["buckets"] = bs;
    auto row = [](const bdqn::DurationBuckets& b) {
      return nlohmann::ordered_json{{"label", b.label}, {"counts", b.counts},
                                    {"percentages", b.percentages}, {"total", b.total}};
    };
    auto runs = nlohmann::ordered_json::array();
    for (const auto& r : report.runs) runs.push_back(row(r));
    out["runs"] = runs;
    out["pooled"] = row(report.pooled);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << bdqn::render(report);
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& run_dirs, bool json) {
  std::vector<nlohmann::json> summaries;
  for (const auto& d : run_dirs) summaries.push_back(bdqn::load_summary(d));
  const auto table = bdqn::compare_report(summaries);
  if (json) {
    nlohmann::ordered_json out;
    out["format_version"] = 1;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      rows.push_back({{"label", r.label}, {"final_scores", r.final_scores}, {"mean", r.mean},
                      {"stddev", r.stddev}, {"mean_best", r.mean_best}});
    }
    out["rows"] = rows;
    out["diff"] = table.diff;
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << bdqn::render(table);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train and evaluate agents with learned action durations"};
  app.require_subcommand(1);

  std::string config_path;
  auto* train = app.add_subcommand("train", "Train one agent per configured seed");
  train->add_option("config", config_path, "YAML experiment config")->required();

  std::string checkpoint;
  int episodes = 0;
  long long eval_seed = -1;
  auto* eval = app.add_subcommand("eval", "Greedy evaluation of a checkpoint");
  eval->add_option("checkpoint", checkpoint, "Checkpoint JSON")->required();
  eval->add_option("config", config_path, "YAML config describing the environment")->required();
  eval->add_option("--episodes", episodes, "Episodes (default: config eval_episodes)");
  eval->add_option("--seed", eval_seed, "Evaluation seed (default: config eval_seed)");

  auto* report = app.add_subcommand("report", "Summaries of finished experiments");
  report->require_subcommand(1);
  std::string run_dir;
  std::string buckets;
  std::string phase = "final";
  bool json = false;
  auto* durations = report->add_subcommand("durations", "Duration bucket shares per run");
  durations->add_option("run-dir", run_dir, "Experiment output directory")->required();
  durations->add_option("--buckets", buckets, "name:lo-hi,... (default short/medium/long)");
  durations->add_option("--phase", phase, "Records to include: train, eval or final");
  durations->add_flag("--json", json, "JSON output");
  std::vector<std::string> run_dirs;
  auto* compare = report->add_subcommand("compare", "Final scores across experiments");
  compare->add_option("run-dirs", run_dirs, "Experiment output directories")->required();
  compare->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("UsageError", e.what(), kExitConfig);
  }

  try {
    if (*train) return cmd_train(config_path);
    if (*eval) return cmd_eval(checkpoint, config_path, episodes, eval_seed);
    if (*durations) return cmd_durations(run_dir, buckets, phase, json);
    if (*compare) return cmd_compare(run_dirs, json);
  } catch (const bdqn::ConfigViolations& e) {
    return fail("ConfigError", e.what(), kExitConfig, e.problems());
  } catch (const bdqn::DimensionError& e) {
    return fail("DimensionError", e.what(), kExitConfig);
  } catch (const bdqn::ConfigError& e) {
    return fail("ConfigError", e.what(), kExitConfig);
  } catch (const bdqn::FormatError& e) {
    return fail("FormatError", e.what(), kExitData);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), kExitInternal);
  }
  return fail("UsageError", "no command", kExitConfig);
}
