#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bdqn/agent.hpp"
#include "bdqn/config.hpp"

namespace bdqn {

inline constexpr int kSummaryFormatVersion = 1;

// File names inside an experiment's output directory.
std::string metrics_file_name(std::uint64_t seed);     // run_<seed>.metrics.jsonl
std::string scores_file_name(std::uint64_t seed);      // run_<seed>.scores.csv
std::string checkpoint_file_name(std::uint64_t seed);  // run_<seed>.checkpoint.json
inline constexpr const char* kSummaryFileName = "summary.json";

struct RunOutcome {
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double final_score = 0.0;
  double best_score = 0.0;
  long decisions = 0;
  long episodes = 0;
};

struct ExperimentResult {
  std::filesystem::path output_dir;
  std::vector<RunOutcome> runs;
  nlohmann::ordered_json summary;
};

// Trains one agent per seed (possibly in parallel), writing a metrics JSONL,
// a scores CSV and a checkpoint per seed, then summary.json. A failing seed is
// recorded in the summary without stopping the others.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Runs a single seed in-process and returns every emitted record (training,
// periodic and final evaluation) without writing files.
struct SingleRun {
  RunOutcome outcome;
  std::vector<MetricsRecord> records;
  std::vector<DecisionTrace> trace;
};
SingleRun run_single(const ExperimentConfig& config, std::uint64_t seed, bool keep_trace = false);

// Greedy evaluation of a saved checkpoint on the environment described by
// `env`. Throws DimensionError when the two are incompatible.
EvalResult evaluate_checkpoint(const std::filesystem::path& checkpoint, const EnvConfig& env,
                               int episodes, std::uint64_t seed);

// ---- reports ---------------------------------------------------------------

struct BucketRange {
  std::string name;
  int lo = 1;
  int hi = 1;  // inclusive; lo > hi is an empty bucket
};

// short/medium/long, 1-3 / 4-6 / 7-10 for d_max = 10 and proportional otherwise.
std::vector<BucketRange> default_buckets(int d_max);

// Throws ConfigError unless the buckets cover 1..d_max exactly once.
void validate_buckets(const std::vector<BucketRange>& buckets, int d_max);

struct DurationBuckets {
  std::string label;
  std::vector<long> counts;
  std::vector<double> percentages;
  long total = 0;
};

struct DurationReport {
  std::vector<BucketRange> buckets;
  std::vector<DurationBuckets> runs;
  DurationBuckets pooled;
};

DurationBuckets bucketize(const std::vector<long>& histogram, const std::vector<BucketRange>& buckets,
                          std::string label);

// Histograms summed over the records of `phase` in each metrics file.
DurationReport duration_report(const std::vector<std::filesystem::path>& metrics_files,
                               const std::vector<BucketRange>& buckets,
                               const std::string& phase = "final");

// Metrics files of an experiment directory, ordered by seed as listed in its summary.
std::vector<std::filesystem::path> metrics_files_in(const std::filesystem::path& run_dir);

struct CompareRow {
  std::string label;
  std::vector<double> final_scores;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double mean_best = 0.0;
};

struct CompareTable {
  std::vector<CompareRow> rows;
  // diff[i][j] = rows[i].mean - rows[j].mean
  std::vector<std::vector<double>> diff;
};

// Rows follow the order of `summaries`. Throws ConfigError when the summaries
// do not share environment and evaluation protocol.
CompareTable compare_report(const std::vector<nlohmann::json>& summaries);
nlohmann::json load_summary(const std::filesystem::path& run_dir);

std::string render(const DurationReport& report);
std::string render(const CompareTable& table);

double mean_of(const std::vector<double>& v);
double sample_stddev(const std::vector<double>& v);

}  // namespace bdqn
